#include "braidkit/braid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "braidkit/polyalg.hpp"

namespace braidkit {

namespace {

// det(H(k) - E I) as a function of k.
cplx det_shifted(const Model& model, cplx energy, double k) {
  Mat2 h = model.bloch(k);
  h.a11 -= energy;
  h.a22 -= energy;
  return h.det();
}

struct WindingAccumulator {
  const Model& model;
  cplx energy;
  double floor;  // |det| below this counts as passing through zero

  // Phase increment over [k0, k1] with endpoint values f0, f1, bisecting
  // until each piece turns by less than pi/2.
  double step(double k0, double k1, cplx f0, cplx f1, int depth) const {
    const double d = std::arg(f1 / f0);
    if (std::abs(d) <= pi / 2.0 || depth <= 0) return d;
    const double km = 0.5 * (k0 + k1);
    const cplx fm = det_shifted(model, energy, km);
    if (std::abs(fm) < floor)
      throw DomainError(
          "det(H - E) vanishes on the loop: reference energy sits on the "
          "spectrum (phase boundary or exceptional point)");
    return step(k0, km, f0, fm, depth - 1) + step(km, k1, fm, f1, depth - 1);
  }
};

// Winding number of det(H(k) - E I) around zero as k sweeps one period.
int winding_number(const Model& model, cplx energy, std::size_t samples) {
  if (samples < 8) samples = 8;
  for (std::size_t grid = samples; grid <= 4 * samples; grid *= 2) {
    std::vector<cplx> vals(grid);
    double fmax = 0.0, fmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid; ++j) {
      vals[j] = det_shifted(model, energy, two_pi * j / grid);
      fmax = std::max(fmax, std::abs(vals[j]));
      fmin = std::min(fmin, std::abs(vals[j]));
    }
    if (fmax == 0.0 || fmin < 1e-10 * fmax)
      throw DomainError(
          "det(H - E) vanishes on the loop: reference energy sits on the "
          "spectrum (phase boundary or exceptional point)");

    const WindingAccumulator acc{model, energy, 1e-10 * fmax};
    double total = 0.0;
    for (std::size_t j = 0; j < grid; ++j) {
      const double k0 = two_pi * j / grid;
      const double k1 = two_pi * (j + 1) / grid;
      total += acc.step(k0, k1, vals[j], vals[(j + 1) % grid], 40);
    }
    const double turns = total / two_pi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) < 0.05) return static_cast<int>(rounded);
    // Residual too large: resample on a finer grid.
  }
  throw DomainError("winding number failed to settle on an integer");
}

// Clearing power of the characteristic polynomial (the beta^0 coefficient of
// char_poly corresponds to beta^-M of the Laurent determinant).
int clearing_power(const Model& model) {
  if (model.ab.empty() || model.ba.empty()) return 0;
  const int lo = model.ab.begin()->first + model.ba.begin()->first;
  return std::max(0, -lo);
}

}  // namespace

int xi_integral(const Model& model, std::size_t samples) {
  // The Bloch matrix is traceless by construction, so the braiding index is
  // the winding of det H around zero.
  return winding_number(model, cplx(0.0), samples);
}

XiRootsResult xi_roots(const Model& model) {
  const RootResult rr = poly_roots(char_poly(model, cplx(0.0)));
  const ModulusCount mc = count_by_modulus(rr.roots, 1.0, 1e-9);
  XiRootsResult out;
  out.xi = static_cast<int>(mc.inside) - clearing_power(model);
  out.boundary = mc.on > 0;
  return out;
}

int xi_ref(const Model& model, cplx energy, std::size_t samples) {
  return winding_number(model, energy, samples);
}

RootSplit root_split(const Model& model, cplx energy, double tol) {
  const RootResult rr = poly_roots(char_poly(model, energy));
  const ModulusCount mc = count_by_modulus(rr.roots, 1.0, tol);
  return {mc.inside, mc.on, mc.outside + rr.degree_drop};
}

OffDiagonalZeros off_diagonal_zeros(const Model& model) {
  // Three-coupling template required: ab = {-m: cm, 0: c0}, ba = {0: c0', n: cn}.
  if (model.ab.size() != 2 || model.ba.size() != 2 || !model.ab.count(0) ||
      !model.ba.count(0))
    throw DomainError("closed-form zeros need the three-coupling template");
  const int m = -model.ab.begin()->first;
  const int n = model.ba.rbegin()->first;
  if (m < 1 || n < 1)
    throw DomainError("closed-form zeros need the three-coupling template");
  const cplx c_ab0 = model.ab.at(0);
  const cplx c_abm = model.ab.begin()->second;
  const cplx c_ba0 = model.ba.at(0);
  const cplx c_ban = model.ba.rbegin()->second;
  if (c_ab0 == cplx(0.0) || c_abm == cplx(0.0) || c_ban == cplx(0.0) ||
      c_ba0 == cplx(0.0))
    throw DomainError("closed-form zeros need all three couplings nonzero");

  OffDiagonalZeros out;
  const auto family = [](cplx ratio, int order) {
    std::vector<cplx> zs;
    const double mod = std::pow(std::abs(ratio), 1.0 / order);
    const double base = std::arg(ratio);
    for (int f = 0; f < order; ++f)
      zs.push_back(std::polar(mod, (base + two_pi * f) / order));
    std::sort(zs.begin(), zs.end(),
              [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
    return zs;
  };
  out.first = family(-c_abm / c_ab0, m);   // zeros of the A<-B row
  out.second = family(-c_ba0 / c_ban, n);  // zeros of the B<-A row
  return out;
}

int xi_from_zero_regions(const Model& model) {
  const OffDiagonalZeros zs = off_diagonal_zeros(model);
  const int m = static_cast<int>(zs.first.size());
  const int n = static_cast<int>(zs.second.size());
  const double r1 = std::abs(zs.first.front());
  const double r2 = std::abs(zs.second.front());
  if (std::abs(r1 - 1.0) <= 1e-12 || std::abs(r2 - 1.0) <= 1e-12)
    throw DomainError("zero family sits on the unit circle: phase boundary");
  const bool in1 = r1 < 1.0, in2 = r2 < 1.0;
  if (in1 && in2) return n;
  if (in1) return 0;
  if (in2) return n - m;
  return -m;
}

namespace {

struct StrandPair {
  cplx s1, s2;
};

// Eigenvalues at k assigned by continuity against the previous pair.
StrandPair continue_strands(const Model& model, double k, StrandPair prev) {
  const auto [f, g] = model.bloch(k).eigenvalues();
  const double keep = std::abs(prev.s1 - f) + std::abs(prev.s2 - g);
  const double swap = std::abs(prev.s1 - g) + std::abs(prev.s2 - f);
  if (swap < keep) return {g, f};
  return {f, g};
}

}  // namespace

BraidWord braid_word(const Model& model, std::size_t samples) {
  if (samples < 16) samples = 16;
  // A golden-ratio offset keeps symmetry-pinned crossings (k = 0, pi, ...)
  // away from the sample points themselves.
  constexpr double offset = 0.6180339887498949;
  const auto kat = [&](std::size_t j) {
    return two_pi * (static_cast<double>(j) + offset) / samples;
  };

  BraidWord word;
  const auto [e1, e2] = model.bloch(kat(0)).eigenvalues();
  const StrandPair start{e1, e2};
  double scale = std::abs(e1 - e2);
  StrandPair cur = start;
  double kprev = kat(0);

  for (std::size_t j = 1; j <= samples; ++j) {
    const double knext = kat(0) + two_pi * j / samples;
    const StrandPair nxt = continue_strands(model, knext, cur);
    scale = std::max(scale, std::abs(nxt.s1 - nxt.s2));
    if (std::abs(nxt.s1 - nxt.s2) < 1e-12 * std::max(scale, 1e-300))
      throw DomainError(
          "energy strands touch: exceptional point on the sweep");

    const double d_prev = (cur.s1 - cur.s2).real();
    const double d_next = (nxt.s1 - nxt.s2).real();
    if ((d_prev < 0.0) != (d_next < 0.0) && d_prev != 0.0) {
      // Bisect for the crossing momentum, carrying strand identity along.
      double ka = kprev, kb = knext;
      StrandPair pa = cur;
      double da = d_prev;
      for (int it = 0; it < 60 && kb - ka > 1e-14; ++it) {
        const double km = 0.5 * (ka + kb);
        const StrandPair pm = continue_strands(model, km, pa);
        const double dm = (pm.s1 - pm.s2).real();
        if ((dm < 0.0) == (da < 0.0)) {
          ka = km;
          pa = pm;
          da = dm;
        } else {
          kb = km;
        }
      }
      const double kc = 0.5 * (ka + kb);
      const StrandPair pc = continue_strands(model, kc, pa);
      const double im = (pc.s1 - pc.s2).imag();
      if (std::abs(im) < 1e-12 * std::max(scale, 1e-300))
        throw DomainError(
            "energy strands touch: exceptional point on the sweep");
      const double slope = d_next - d_prev;
      Crossing x;
      x.k = std::fmod(kc, two_pi);
      x.sign = (im * slope > 0.0) ? -1 : 1;
      word.crossings.push_back(x);
    }
    cur = nxt;
    kprev = knext;
  }

  for (const Crossing& x : word.crossings) word.exponent_sum += x.sign;
  // After a full period the eigenvalue pair is the same set; the strands
  // swap identity exactly when the braid has odd exponent parity.
  const double keep = std::abs(cur.s1 - start.s1) + std::abs(cur.s2 - start.s2);
  const double swap = std::abs(cur.s1 - start.s2) + std::abs(cur.s2 - start.s1);
  word.closure_swaps = swap < keep;
  return word;
}

std::string braid_word_text(const BraidWord& word) {
  if (word.crossings.empty()) return "e";
  std::string out;
  for (const Crossing& x : word.crossings) {
    if (!out.empty()) out += ' ';
    out += x.sign > 0 ? "s1" : "s1^-1";
  }
  return out;
}

std::string closure_name(int exponent_sum) {
  switch (std::abs(exponent_sum)) {
    case 0:
      return "unlink";
    case 1:
      return "unknot";
    case 2:
      return "Hopf link";
    case 3:
      return "trefoil";
    default:
      return "other(" + std::to_string(std::abs(exponent_sum)) + ")";
  }
}

}  // namespace braidkit
