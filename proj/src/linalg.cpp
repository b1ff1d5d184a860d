#include "braidkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace braidkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// z/|z| with the 0 -> 1 convention, used to pick reflection phases.
cplx unit_phase(cplx z) {
  const double a = std::abs(z);
  return a == 0.0 ? cplx(1.0, 0.0) : z / a;
}

double vec_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Unitary 2x2 rotation G with G*[a;b] = [r;0]; stored as the two complex
// entries of its first row (ca, sb) so row2 = (-conj(sb), conj(ca)).
struct Rotation {
  cplx ca, sb;  // first row: [ca, sb]
  bool trivial = false;
};

Rotation make_rotation(cplx a, cplx b) {
  Rotation g;
  const double r = std::hypot(std::abs(a), std::abs(b));
  if (r == 0.0 || std::abs(b) == 0.0) {
    g.ca = cplx(1.0, 0.0);
    g.sb = cplx(0.0, 0.0);
    g.trivial = true;
    return g;
  }
  g.ca = std::conj(a) / r;
  g.sb = std::conj(b) / r;
  return g;
}

}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<cplx> CMatrix::col(std::size_t j) const {
  std::vector<cplx> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<cplx> CMatrix::mul(const std::vector<cplx>& x) const {
  std::vector<cplx> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CMatrix CMatrix::mul(const CMatrix& other) const {
  CMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out(i, j) += a * other(k, j);
    }
  return out;
}

double CMatrix::norm_fro() const {
  double s = 0.0;
  for (const cplx& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::norm_1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double CMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const cplx& v : data_) best = std::max(best, std::abs(v));
  return best;
}

namespace {

// Parlett-Reinsch balancing (radix 2, scaling phase only). Returns the
// per-index scale factors; A is replaced by D^-1 A D.
std::vector<double> balance(CMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> scale(n, 1.0);
  bool done = false;
  int rounds = 0;
  while (!done && rounds++ < 100) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        scale[i] *= f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
  return scale;
}

// Householder reduction to upper Hessenberg form. When q is non-null it
// receives the accumulated unitary transform (A_in = Q H Q*).
void to_hessenberg(CMatrix& a, CMatrix* q) {
  const std::size_t n = a.rows();
  if (q) *q = CMatrix::identity(n);
  if (n < 3) return;
  std::vector<cplx> u;
  for (std::size_t c = 0; c + 2 < n; ++c) {
    // Skip columns already in Hessenberg shape below the subdiagonal.
    double below = 0.0;
    for (std::size_t i = c + 2; i < n; ++i) below += std::abs(a(i, c));
    if (below == 0.0) continue;

    const std::size_t len = n - c - 1;
    u.assign(len, 0.0);
    double xnorm2 = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      u[t] = a(c + 1 + t, c);
      xnorm2 += std::norm(u[t]);
    }
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const cplx alpha = -unit_phase(u[0]) * xnorm;
    u[0] -= alpha;
    double unorm2 = 0.0;
    for (const cplx& v : u) unorm2 += std::norm(v);
    if (unorm2 == 0.0) continue;
    const double tau = 2.0 / unorm2;

    // Left: A <- P A on the trailing rows.
    for (std::size_t j = c; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < len; ++t)
        s += std::conj(u[t]) * a(c + 1 + t, j);
      s *= tau;
      for (std::size_t t = 0; t < len; ++t) a(c + 1 + t, j) -= s * u[t];
    }
    // Right: A <- A P on the trailing columns.
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < len; ++t) s += a(i, c + 1 + t) * u[t];
      s *= tau;
      for (std::size_t t = 0; t < len; ++t)
        a(i, c + 1 + t) -= s * std::conj(u[t]);
    }
    if (q) {
      for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (std::size_t t = 0; t < len; ++t) s += (*q)(i, c + 1 + t) * u[t];
        s *= tau;
        for (std::size_t t = 0; t < len; ++t)
          (*q)(i, c + 1 + t) -= s * std::conj(u[t]);
      }
    }
    // Tidy the column to the exact reduced form.
    a(c + 1, c) = alpha;
    for (std::size_t i = c + 2; i < n; ++i) a(i, c) = 0.0;
  }
}

// Shifted QR on an upper Hessenberg matrix. Eigenvalues land in `values`.
// Returns false when the iteration cap (30n) was reached.
bool hessenberg_qr(CMatrix& h, std::vector<cplx>& values, int& iterations) {
  const std::size_t n = h.rows();
  values.assign(n, 0.0);
  if (n == 0) return true;
  const double hnorm = std::max(h.norm_fro(), 1e-300);
  const int cap = 30 * static_cast<int>(n);
  int total = 0;

  std::vector<Rotation> rots(n);
  std::ptrdiff_t en = static_cast<std::ptrdiff_t>(n) - 1;
  int its = 0;
  while (en >= 0) {
    // Look for a negligible subdiagonal entry.
    std::ptrdiff_t l = en;
    while (l > 0) {
      const double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      const double thr = kEps * (s > 0.0 ? s : hnorm);
      if (std::abs(h(l, l - 1)) <= thr) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == en) {
      values[en] = h(en, en);
      --en;
      its = 0;
      continue;
    }
    if (total >= cap) {
      // Give up; report the current diagonal as the best estimate.
      for (std::ptrdiff_t i = 0; i <= en; ++i) values[i] = h(i, i);
      iterations = total;
      return false;
    }

    // Shift selection.
    cplx shift;
    if (its > 0 && its % 10 == 0) {
      // Exceptional shift to break symmetry-induced stalls.
      double mag = std::abs(h(en, en - 1));
      if (en >= 2) mag += std::abs(h(en - 1, en - 2));
      shift = cplx(mag, 0.0);
    } else {
      const cplx a = h(en - 1, en - 1), b = h(en - 1, en);
      const cplx c = h(en, en - 1), d = h(en, en);
      const cplx mid = 0.5 * (a + d);
      const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const cplx e1 = mid + disc, e2 = mid - disc;
      shift = (std::abs(e1 - d) < std::abs(e2 - d)) ? e1 : e2;
    }
    ++its;
    ++total;

    for (std::ptrdiff_t i = l; i <= en; ++i) h(i, i) -= shift;
    // QR sweep: zero the subdiagonal with rotations, then multiply back.
    for (std::ptrdiff_t j = l; j < en; ++j) {
      const Rotation g = make_rotation(h(j, j), h(j + 1, j));
      rots[j] = g;
      if (g.trivial) {
        continue;
      }
      for (std::size_t col = static_cast<std::size_t>(j); col < n; ++col) {
        const cplx top = h(j, col), bot = h(j + 1, col);
        h(j, col) = g.ca * top + g.sb * bot;
        h(j + 1, col) = -std::conj(g.sb) * top + std::conj(g.ca) * bot;
      }
    }
    for (std::ptrdiff_t j = l; j < en; ++j) {
      const Rotation g = rots[j];
      if (g.trivial) continue;
      // Right-multiply by G*: mixes columns j and j+1 on rows 0..j+1.
      for (std::ptrdiff_t row = 0; row <= j + 1; ++row) {
        const cplx cl = h(row, j), cr = h(row, j + 1);
        h(row, j) = cl * std::conj(g.ca) + cr * std::conj(g.sb);
        h(row, j + 1) = -cl * g.sb + cr * g.ca;
      }
    }
    for (std::ptrdiff_t i = l; i <= en; ++i) h(i, i) += shift;
  }
  iterations = total;
  return true;
}

// Solves (h - lambda I) x = b for an upper Hessenberg h by Gaussian
// elimination with adjacent-row pivoting; near-zero pivots are regularized.
struct HessenbergShiftedLu {
  CMatrix m;  // upper triangular factor plus stored multipliers
  std::vector<cplx> mult;
  std::vector<bool> swapped;
};

HessenbergShiftedLu hess_lu(const CMatrix& h, cplx lambda, double pivot_floor) {
  const std::size_t n = h.rows();
  HessenbergShiftedLu f{h, std::vector<cplx>(n, 0.0), std::vector<bool>(n, false)};
  for (std::size_t i = 0; i < n; ++i) f.m(i, i) -= lambda;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (std::abs(f.m(k + 1, k)) > std::abs(f.m(k, k))) {
      f.swapped[k] = true;
      for (std::size_t j = k; j < n; ++j) std::swap(f.m(k, j), f.m(k + 1, j));
    }
    if (std::abs(f.m(k, k)) < pivot_floor) f.m(k, k) = pivot_floor;
    const cplx mult = f.m(k + 1, k) / f.m(k, k);
    f.mult[k] = mult;
    f.m(k + 1, k) = 0.0;
    for (std::size_t j = k + 1; j < n; ++j) f.m(k + 1, j) -= mult * f.m(k, j);
  }
  if (n > 0 && std::abs(f.m(n - 1, n - 1)) < pivot_floor)
    f.m(n - 1, n - 1) = pivot_floor;
  return f;
}

std::vector<cplx> hess_lu_solve(const HessenbergShiftedLu& f,
                                std::vector<cplx> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (f.swapped[k]) std::swap(b[k], b[k + 1]);
    b[k + 1] -= f.mult[k] * b[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    cplx s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.m(i, j) * b[j];
    b[i] = s / f.m(i, i);
  }
  return b;
}

}  // namespace

EigResult eig(const CMatrix& a_in, bool want_vectors) {
  EigResult out;
  const std::size_t n = a_in.rows();
  if (n == 0) return out;
  if (n == 1) {
    out.values = {a_in(0, 0)};
    if (want_vectors) {
      out.vectors = CMatrix::identity(1);
      out.residuals = {0.0};
    }
    return out;
  }

  CMatrix a = a_in;
  const std::vector<double> scale = balance(a);
  CMatrix q;
  to_hessenberg(a, want_vectors ? &q : nullptr);
  const CMatrix hess0 = a;  // saved: QR below is destructive
  const double hnorm = std::max(hess0.norm_fro(), 1e-300);

  out.converged = hessenberg_qr(a, out.values, out.iterations);

  if (!want_vectors) return out;

  out.vectors = CMatrix(n, n);
  out.residuals.assign(n, 0.0);
  const double pivot_floor = kEps * hnorm;

  for (std::size_t idx = 0; idx < n; ++idx) {
    // Separate exactly repeated eigenvalues so inverse iteration can pick up
    // distinct directions within a multiple eigenspace.
    int dup = 0;
    for (std::size_t p = 0; p < idx; ++p)
      if (std::abs(out.values[p] - out.values[idx]) <= 1e-10 * hnorm) ++dup;
    const cplx lambda =
        out.values[idx] + static_cast<double>(dup) * 3e-12 * hnorm * cplx(1.0, 0.7);

    const HessenbergShiftedLu f = hess_lu(hess0, lambda, pivot_floor);

    std::vector<cplx> b(n);
    for (std::size_t t = 0; t < n; ++t) {
      const double ph = 0.7 * static_cast<double>(t) +
                        1.9 * static_cast<double>(idx) +
                        0.37 * static_cast<double>(t * (idx + 1) % 97);
      b[t] = std::polar(1.0, ph);
    }
    double bn = vec_norm(b);
    for (cplx& v : b) v /= bn;

    std::vector<cplx> best;
    double best_res = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < 3; ++sweep) {
      std::vector<cplx> x = hess_lu_solve(f, b);
      const double xn = vec_norm(x);
      if (!(xn > 0.0) || !std::isfinite(xn)) break;
      for (cplx& v : x) v /= xn;
      // Residual against the unshifted Hessenberg matrix.
      std::vector<cplx> hx = hess0.mul(x);
      double rs = 0.0;
      for (std::size_t t = 0; t < n; ++t)
        rs += std::norm(hx[t] - out.values[idx] * x[t]);
      rs = std::sqrt(rs);
      if (rs < best_res) {
        best_res = rs;
        best = x;
      }
      if (rs <= 10.0 * kEps * hnorm) break;
      b = std::move(x);
    }
    if (best.empty()) best.assign(n, 0.0), best[idx % n] = 1.0;

    // Back-transform through the Householder basis and undo balancing.
    std::vector<cplx> v = q.mul(best);
    for (std::size_t t = 0; t < n; ++t) v[t] *= scale[t];
    const double vn = vec_norm(v);
    if (vn > 0.0)
      for (cplx& z : v) z /= vn;
    for (std::size_t t = 0; t < n; ++t) out.vectors(t, idx) = v[t];

    std::vector<cplx> av = a_in.mul(v);
    double rs = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      rs += std::norm(av[t] - out.values[idx] * v[t]);
    out.residuals[idx] = std::sqrt(rs);
  }

  // Defectiveness probe: clustered eigenvalues with near-parallel vectors.
  const double cluster_tol = 1e-6 * hnorm;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q2) {
    return out.values[p].real() < out.values[q2].real();
  });
  for (std::size_t oi = 0; oi < n && !out.defective; ++oi) {
    for (std::size_t oj = oi + 1; oj < n; ++oj) {
      const std::size_t i = order[oi], j = order[oj];
      if (out.values[j].real() - out.values[i].real() > cluster_tol) break;
      if (std::abs(out.values[i] - out.values[j]) > cluster_tol) continue;
      cplx dot = 0.0;
      for (std::size_t t = 0; t < n; ++t)
        dot += std::conj(out.vectors(t, i)) * out.vectors(t, j);
      if (std::abs(dot) > 1.0 - 1e-6) {
        out.defective = true;
        break;
      }
    }
  }
  return out;
}

LuFactors lu_factor(const CMatrix& a) {
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n), false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx m = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

std::vector<cplx> lu_solve(const LuFactors& f, std::vector<cplx> b) {
  const std::size_t n = b.size();
  if (f.singular) throw DomainError("singular matrix in lu_solve");
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

CMatrix inverse(const CMatrix& a) {
  const std::size_t n = a.rows();
  const LuFactors f = lu_factor(a);
  if (f.singular) throw DomainError("matrix is singular");
  CMatrix inv(n, n);
  std::vector<cplx> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), cplx(0.0));
    e[j] = 1.0;
    const std::vector<cplx> x = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  return inv;
}

double cond_1(const CMatrix& a) {
  const LuFactors f = lu_factor(a);
  if (f.singular) return std::numeric_limits<double>::infinity();
  return a.norm_1() * inverse(a).norm_1();
}

}  // namespace braidkit
