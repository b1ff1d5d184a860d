#include "braidkit/polyalg.hpp"

#include <algorithm>
#include <cmath>

#include "braidkit/linalg.hpp"

namespace braidkit {

cplx poly_eval(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

cplx poly_eval_deriv(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 1;)
    acc = acc * z + static_cast<double>(i) * coeffs[i];
  return acc;
}

RootResult poly_roots(const std::vector<cplx>& coeffs) {
  RootResult out;
  if (coeffs.empty()) throw DomainError("empty coefficient list");

  double cmax = 0.0;
  for (const cplx& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax <= 1e-300)
    throw DomainError("all polynomial coefficients vanish");

  // Low-end zeros are exact roots at the origin.
  std::size_t low = 0;
  while (low < coeffs.size() && std::abs(coeffs[low]) <= 1e-300) ++low;
  // Negligible leading coefficients: those roots ran off to infinity.
  std::size_t high = coeffs.size() - 1;
  while (high > low && std::abs(coeffs[high]) <= 1e-12 * cmax) {
    --high;
    ++out.degree_drop;
  }

  std::vector<cplx> roots(low, cplx(0.0, 0.0));
  const std::size_t d = high - low;
  if (d > 0) {
    // Companion matrix of the monic trimmed polynomial.
    CMatrix comp(d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) comp(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < d; ++i)
      comp(i, d - 1) = -coeffs[low + i] / coeffs[high];
    EigResult e = eig(comp, /*want_vectors=*/false);
    if (!e.converged)
      throw DomainError("companion eigenvalue iteration failed to converge");
    for (cplx z : e.values) {
      // One guarded Newton step against the input polynomial.
      for (int step = 0; step < 3; ++step) {
        const cplx p = poly_eval(coeffs, z);
        const cplx dp = poly_eval_deriv(coeffs, z);
        if (std::abs(dp) == 0.0) break;
        const cplx z2 = z - p / dp;
        if (std::abs(poly_eval(coeffs, z2)) < std::abs(p))
          z = z2;
        else
          break;
      }
      roots.push_back(z);
    }
  }

  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });

  const std::size_t full_degree = coeffs.size() - 1;
  double maxmod = 1.0;
  for (cplx z : roots) maxmod = std::max(maxmod, std::abs(z));
  out.residual_bound =
      1e-8 * cmax * std::pow(maxmod, static_cast<double>(full_degree));
  out.residuals.reserve(roots.size());
  for (cplx z : roots) out.residuals.push_back(std::abs(poly_eval(coeffs, z)));

  // Mark runs of nearly equal moduli (candidate symmetric families).
  std::size_t start = 0;
  for (std::size_t i = 1; i <= roots.size(); ++i) {
    const bool tied =
        i < roots.size() &&
        std::abs(std::abs(roots[i]) - std::abs(roots[i - 1])) <=
            1e-9 * std::max(1.0, std::abs(roots[i - 1]));
    if (!tied) {
      if (i - start >= 2) out.tie_groups.emplace_back(start, i);
      start = i;
    }
  }

  out.roots = std::move(roots);
  return out;
}

ModulusCount count_by_modulus(const std::vector<cplx>& roots, double radius,
                              double tol) {
  ModulusCount c;
  for (cplx z : roots) {
    const double m = std::abs(z);
    if (std::abs(m - radius) <= tol)
      ++c.on;
    else if (m < radius)
      ++c.inside;
    else
      ++c.outside;
  }
  return c;
}

cplx vieta_sum(const std::vector<cplx>& coeffs) {
  const std::size_t dd = coeffs.size();
  if (dd < 2) return 0.0;
  return -coeffs[dd - 2] / coeffs[dd - 1];
}

cplx vieta_product(const std::vector<cplx>& coeffs) {
  const std::size_t dd = coeffs.size();
  if (dd < 2) return 0.0;
  const double sign = (dd - 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * coeffs[0] / coeffs[dd - 1];
}

}  // namespace braidkit
