#pragma once

#include <cstddef>
#include <vector>

#include "braidkit/types.hpp"

namespace braidkit {

// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<cplx> col(std::size_t j) const;
  std::vector<cplx> mul(const std::vector<cplx>& x) const;
  CMatrix mul(const CMatrix& other) const;

  double norm_fro() const;
  double norm_1() const;    // max absolute column sum
  double norm_inf() const;  // max absolute row sum
  double max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

// Result of a full or values-only eigendecomposition.
struct EigResult {
  std::vector<cplx> values;
  CMatrix vectors;                 // column j pairs with values[j]; empty in
                                   // values-only mode
  std::vector<double> residuals;   // ||A v - lambda v||_2 with ||v||_2 = 1
  bool converged = true;           // false: iteration cap hit, values partial
  bool defective = false;          // near-parallel eigenvectors found among
                                   // clustered eigenvalues
  int iterations = 0;
};

// General complex eigensolver: balancing, Householder reduction to upper
// Hessenberg form, explicitly shifted QR iteration for the eigenvalues, then
// inverse iteration on the saved Hessenberg matrix (back-transformed) for the
// eigenvectors. Gives up after 30*n QR iterations (converged = false, the
// remaining diagonal returned as estimates).
EigResult eig(const CMatrix& a, bool want_vectors = true);

// LU decomposition with partial pivoting, stored packed.
struct LuFactors {
  CMatrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

LuFactors lu_factor(const CMatrix& a);
std::vector<cplx> lu_solve(const LuFactors& f, std::vector<cplx> b);
CMatrix inverse(const CMatrix& a);  // throws DomainError if singular

// 1-norm condition estimate via the explicit inverse (matrices here are small).
// Returns +inf for singular input.
double cond_1(const CMatrix& a);

}  // namespace braidkit
