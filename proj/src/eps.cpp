#include "braidkit/eps.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "braidkit/braid.hpp"

namespace braidkit {

std::string boundary_line_name(BoundaryLine line) {
  switch (line) {
    case BoundaryLine::pq:
      return "PQ";
    case BoundaryLine::rs:
      return "RS";
    case BoundaryLine::ab:
      return "AB";
    default:
      return "EF";
  }
}

namespace {

double wrap_to_pi(double k) {
  double r = std::fmod(k, two_pi);
  if (r > pi) r -= two_pi;
  if (r <= -pi) r += two_pi;
  return r;
}

}  // namespace

std::vector<double> ep_momenta(BoundaryLine line, int m) {
  std::vector<double> ks;
  switch (line) {
    case BoundaryLine::pq:
      if (m < 1) throw DomainError("reach m must be >= 1");
      for (int j = 0; j < m; ++j) ks.push_back(wrap_to_pi(two_pi * j / m));
      break;
    case BoundaryLine::rs:
      if (m < 1) throw DomainError("reach m must be >= 1");
      for (int j = 0; j < m; ++j)
        ks.push_back(wrap_to_pi((2.0 * j + 1.0) * pi / m));
      break;
    case BoundaryLine::ab:
      ks.push_back(0.0);
      break;
    case BoundaryLine::ef:
      ks.push_back(pi);
      break;
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

namespace {

// Laurent coefficients of det H(k) (traceless H) in powers of e^{ik}:
// -(a12 * a21) - d^2 with d the diagonal of the traceless part.
std::map<int, cplx> det_laurent(const Model& model) {
  std::map<int, cplx> lc;
  for (const auto& [b1, c1] : model.ab)
    for (const auto& [b2, c2] : model.ba) lc[b1 + b2] -= c1 * c2;
  const cplx d(-model.c_i + model.c_z);
  lc[0] -= d * d;
  return lc;
}

cplx laurent_eval(const std::map<int, cplx>& lc, double k, int deriv) {
  cplx acc = 0.0;
  for (const auto& [f, c] : lc) {
    cplx term = c * std::polar(1.0, k * f);
    for (int t = 0; t < deriv; ++t) term *= cplx(0.0, f);
    acc += term;
  }
  return acc;
}

}  // namespace

std::vector<EpPoint> find_eps(const Model& model, std::size_t scan,
                              double tol) {
  if (scan < 16) scan = 16;
  const std::map<int, cplx> lc = det_laurent(model);

  std::vector<double> mags(scan);
  double scale = 0.0;
  for (std::size_t j = 0; j < scan; ++j) {
    mags[j] = std::abs(laurent_eval(lc, -pi + two_pi * j / scan, 0));
    scale = std::max(scale, mags[j]);
  }
  if (scale == 0.0) throw DomainError("det H vanishes identically");

  std::vector<EpPoint> found;
  for (std::size_t j = 0; j < scan; ++j) {
    const double prev = mags[(j + scan - 1) % scan];
    const double next = mags[(j + 1) % scan];
    if (mags[j] > prev || mags[j] > next) continue;  // not a local minimum
    if (mags[j] > 0.05 * scale) continue;

    // Gauss-Newton on |h(k)|^2: exact for a linearly vanishing h.
    double k = -pi + two_pi * j / scan;
    for (int it = 0; it < 60; ++it) {
      const cplx h = laurent_eval(lc, k, 0);
      const cplx hp = laurent_eval(lc, k, 1);
      const double denom = std::norm(hp);
      if (denom == 0.0) break;
      const double delta = (std::conj(h) * hp).real() / denom;
      k -= delta;
      if (std::abs(delta) < 1e-15) break;
    }
    const double resid = std::abs(laurent_eval(lc, k, 0));
    if (resid > tol * scale) continue;
    found.push_back({wrap_to_pi(k), resid});
  }

  // Merge duplicates that converged to the same momentum.
  std::sort(found.begin(), found.end(),
            [](const EpPoint& a, const EpPoint& b) { return a.k < b.k; });
  std::vector<EpPoint> unique;
  for (const EpPoint& p : found) {
    const bool near_prev =
        !unique.empty() && std::abs(p.k - unique.back().k) < 1e-6;
    const bool near_wrap =
        !unique.empty() &&
        std::abs(std::abs(p.k - unique.front().k) - two_pi) < 1e-6;
    if (near_prev || near_wrap) {
      if (near_prev && p.det_abs < unique.back().det_abs) unique.back() = p;
      continue;
    }
    unique.push_back(p);
  }
  return unique;
}

TransitionClass classify_transition(const Model& before, const Model& after,
                                    BoundaryLine line) {
  TransitionClass tc;
  tc.xi_before = xi_integral(before);
  tc.xi_after = xi_integral(after);

  int m = 1;
  if (!before.ab.empty()) m = std::max(1, -before.ab.begin()->first);
  tc.ep_count = ep_momenta(line, m).size();

  const bool signs_conclusive = tc.xi_before != 0 && tc.xi_after != 0;
  const bool opposite = tc.xi_before * tc.xi_after < 0;
  const bool many_eps = tc.ep_count > 1;
  if (signs_conclusive)
    tc.type = opposite ? 2 : 1;
  else
    tc.type = many_eps ? 2 : 1;
  tc.criteria_agree = (tc.type == 2) == many_eps;
  return tc;
}

double defectiveness_residual(const Model& model, double k) {
  const Mat2 h = model.bloch(k).traceless();
  const Mat2 h2{h.a11 * h.a11 + h.a12 * h.a21, h.a11 * h.a12 + h.a12 * h.a22,
                h.a21 * h.a11 + h.a22 * h.a21, h.a21 * h.a12 + h.a22 * h.a22};
  const double denom = h.max_abs() * h.max_abs();
  if (denom == 0.0) return 0.0;
  return h2.max_abs() / denom;
}

}  // namespace braidkit
