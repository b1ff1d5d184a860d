#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace braidkit {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Raised when inputs are mathematically out of range for an operation
// (phase boundary hit, EP on the sampling grid, singular solve, ...).
// The CLI maps this to exit code 2.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on file / serialization failures. CLI exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense 2x2 complex matrix, the carrier for Bloch/surrogate Hamiltonians and
// k-space circuit Laplacians.
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  cplx trace() const { return a11 + a22; }
  cplx det() const { return a11 * a22 - a12 * a21; }

  // Eigenvalues T/2 +- sqrt((T/2)^2 - det). The second entry carries the
  // principal square root (argument in (-pi/2, pi/2]), the first its negative
  // shifted by the mean: returns (E-, E+).
  std::pair<cplx, cplx> eigenvalues() const {
    const cplx mid = 0.5 * (a11 + a22);
    const cplx disc = std::sqrt(mid * mid - det());
    return {mid - disc, mid + disc};
  }

  Mat2 operator-(const Mat2& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }
  Mat2 operator*(cplx s) const { return {s * a11, s * a12, s * a21, s * a22}; }

  // Largest entry magnitude; used for relative tolerances.
  double max_abs() const;

  // H - (tr H / 2) I, the traceless part the winding analysis acts on.
  Mat2 traceless() const {
    const cplx mid = 0.5 * (a11 + a22);
    return {a11 - mid, a12, a21, a22 - mid};
  }
};

inline double Mat2::max_abs() const {
  double m = std::abs(a11);
  m = std::max(m, std::abs(a12));
  m = std::max(m, std::abs(a21));
  m = std::max(m, std::abs(a22));
  return m;
}

}  // namespace braidkit
