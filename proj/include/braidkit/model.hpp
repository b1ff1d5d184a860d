#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "braidkit/linalg.hpp"
#include "braidkit/types.hpp"

namespace braidkit {

// Two-band lattice model with asymmetric long-range coupling. Couplings are
// stored as sparse Laurent series in the cell-offset variable b:
//   A<-B amplitude at offset b contributes C_ab[b] e^{ikb} to H(k)_{12},
//   B<-A amplitude at offset d contributes C_ba[d] e^{ikd} to H(k)_{21}.
// The diagonal is (-C_i + C_z, C_i - C_z): C_i is the staggered intracell
// term and C_z an optional mass that breaks the chiral structure.
struct Model {
  std::map<int, cplx> ab;  // offset -> amplitude for the A<-B row
  std::map<int, cplx> ba;  // offset -> amplitude for the B<-A row
  double c_i = 0.0;
  double c_z = 0.0;

  // Canonical three-coupling model: intercell reach m to the left on the
  // A<-B bond and n to the right on the B<-A bond.
  //   H(k)_{12} = c_ab0 + c_ab_neg_m e^{-i m k}
  //   H(k)_{21} = c_ab0 + c_ba_n  e^{+i n k}
  static Model three_coupling(int m, int n, cplx c_ab0, cplx c_ab_neg_m,
                              cplx c_ba_n, double c_i = 0.0, double c_z = 0.0);

  Mat2 bloch(double k) const;

  // Farthest reach on each side over both coupling rows (nonnegative).
  int max_left() const;   // largest -b over entries with b < 0
  int max_right() const;  // largest b over entries with b > 0

  // Degree of the characteristic polynomial in beta (sum of the reaches).
  int char_poly_degree() const;

  // Removes entries with |amplitude| <= 1e-300 (guards against stray zeros
  // polluting reach computations).
  void prune();
};

// Coefficients of P(beta) = beta^M * [a12(beta) a21(beta)
//                                     - (a11 - E)(a22 - E)]
// where a12(beta) = sum_b C_ab[b] beta^b (and likewise a21), and
// M = max(0, -lowest exponent) clears negative powers. Index f holds the
// beta^f coefficient. P and det(H(beta) - E) share zeros away from beta = 0.
std::vector<cplx> char_poly(const Model& model, cplx energy);

// Real-space single-particle matrix on `cells` unit cells (2 sites per cell,
// A at 2j, B at 2j+1). Periodic wraps offsets mod cells; open drops hops that
// leave the chain. Requires cells >= max_left + max_right + 1.
enum class Boundary { periodic, open };
CMatrix real_space_matrix(const Model& model, std::size_t cells, Boundary bc);

// Same lattice with every hop direction reversed (transpose partner); its
// real-space matrix is exactly the transpose of the original's.
Model mirrored(const Model& model);

}  // namespace braidkit
