#pragma once

#include <cstddef>
#include <vector>

#include "braidkit/types.hpp"

namespace braidkit {

// Roots of a dense complex polynomial c[0] + c[1] z + ... + c[D] z^D.
struct RootResult {
  std::vector<cplx> roots;        // sorted by ascending modulus, then argument
  std::size_t degree_drop = 0;    // leading coefficients trimmed as negligible;
                                  // that many roots escaped to infinity
  std::vector<double> residuals;  // |p(root)| per root
  double residual_bound = 0.0;    // the acceptance threshold that was applied
  // Indices into `roots` where a group of nearly equal moduli begins/ends
  // (half-open); only groups of size >= 2 are recorded.
  std::vector<std::pair<std::size_t, std::size_t>> tie_groups;
};

// Companion-matrix root finder with balancing and one Newton polish per root.
// Trailing zero coefficients produce explicit zero roots; leading coefficients
// below 1e-12 * max|c| are trimmed and counted in degree_drop.
// Throws DomainError if every coefficient is negligible.
RootResult poly_roots(const std::vector<cplx>& coeffs);

// Evaluates the polynomial and its derivative at z (Horner).
cplx poly_eval(const std::vector<cplx>& coeffs, cplx z);
cplx poly_eval_deriv(const std::vector<cplx>& coeffs, cplx z);

// Classification of root moduli against a circle of the given radius.
struct ModulusCount {
  std::size_t inside = 0;   // |z| < radius - tol
  std::size_t on = 0;       // | |z| - radius | <= tol
  std::size_t outside = 0;  // |z| > radius + tol
};

// Absolute tolerance on the modulus; inside + on + outside == roots.size().
ModulusCount count_by_modulus(const std::vector<cplx>& roots, double radius,
                              double tol);

// Vieta cross-checks: sum = -c[D-1]/c[D], product = (-1)^D c[0]/c[D].
cplx vieta_sum(const std::vector<cplx>& coeffs);
cplx vieta_product(const std::vector<cplx>& coeffs);

}  // namespace braidkit
