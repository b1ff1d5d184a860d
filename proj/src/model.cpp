#include "braidkit/model.hpp"

#include <algorithm>
#include <cmath>

namespace braidkit {

namespace {

// Signed offset span of one coupling row: (lowest, highest), (0, 0) if empty.
std::pair<int, int> row_span(const std::map<int, cplx>& row) {
  if (row.empty()) return {0, 0};
  return {row.begin()->first, row.rbegin()->first};
}

}  // namespace

Model Model::three_coupling(int m, int n, cplx c_ab0, cplx c_ab_neg_m,
                            cplx c_ba_n, double c_i, double c_z) {
  Model mod;
  mod.ab[0] = c_ab0;
  mod.ab[-m] = c_ab_neg_m;
  mod.ba[0] = c_ab0;
  mod.ba[n] = c_ba_n;
  mod.c_i = c_i;
  mod.c_z = c_z;
  return mod;
}

Mat2 Model::bloch(double k) const {
  cplx a12 = 0.0, a21 = 0.0;
  for (const auto& [b, c] : ab) a12 += c * std::polar(1.0, k * b);
  for (const auto& [d, c] : ba) a21 += c * std::polar(1.0, k * d);
  return {cplx(-c_i + c_z), a12, a21, cplx(c_i - c_z)};
}

int Model::max_left() const {
  int reach = 0;
  if (!ab.empty()) reach = std::max(reach, -ab.begin()->first);
  if (!ba.empty()) reach = std::max(reach, -ba.begin()->first);
  return reach;
}

int Model::max_right() const {
  int reach = 0;
  if (!ab.empty()) reach = std::max(reach, ab.rbegin()->first);
  if (!ba.empty()) reach = std::max(reach, ba.rbegin()->first);
  return reach;
}

int Model::char_poly_degree() const {
  if (ab.empty() || ba.empty()) return 0;
  const auto [ab_lo, ab_hi] = row_span(ab);
  const auto [ba_lo, ba_hi] = row_span(ba);
  const int lo = std::min(ab_lo + ba_lo, 0);
  const int hi = std::max(ab_hi + ba_hi, 0);
  return hi - lo;
}

void Model::prune() {
  std::erase_if(ab, [](const auto& e) { return std::abs(e.second) <= 1e-300; });
  std::erase_if(ba, [](const auto& e) { return std::abs(e.second) <= 1e-300; });
}

std::vector<cplx> char_poly(const Model& model, cplx energy) {
  const cplx d1 = cplx(-model.c_i + model.c_z) - energy;
  const cplx d2 = cplx(model.c_i - model.c_z) - energy;

  if (model.ab.empty() || model.ba.empty()) return {-d1 * d2};

  const auto [ab_lo, ab_hi] = row_span(model.ab);
  const auto [ba_lo, ba_hi] = row_span(model.ba);
  const int lo = std::min(ab_lo + ba_lo, 0);
  const int hi = std::max(ab_hi + ba_hi, 0);

  std::vector<cplx> coeffs(static_cast<std::size_t>(hi - lo + 1), cplx(0.0));
  for (const auto& [b1, c1] : model.ab)
    for (const auto& [b2, c2] : model.ba)
      coeffs[static_cast<std::size_t>(b1 + b2 - lo)] += c1 * c2;
  coeffs[static_cast<std::size_t>(-lo)] -= d1 * d2;
  return coeffs;
}

CMatrix real_space_matrix(const Model& model, std::size_t cells, Boundary bc) {
  const int span = model.max_left() + model.max_right();
  if (cells < static_cast<std::size_t>(span) + 1)
    throw DomainError("chain too short for the coupling reach: need at least " +
                      std::to_string(span + 1) + " cells");
  const std::size_t dim = 2 * cells;
  CMatrix mat(dim, dim);
  const std::ptrdiff_t nc = static_cast<std::ptrdiff_t>(cells);

  for (std::ptrdiff_t j = 0; j < nc; ++j) {
    mat(2 * j, 2 * j) = cplx(-model.c_i + model.c_z);
    mat(2 * j + 1, 2 * j + 1) = cplx(model.c_i - model.c_z);
    for (const auto& [b, c] : model.ab) {
      const std::ptrdiff_t tgt = j + b;
      if (bc == Boundary::periodic) {
        const std::ptrdiff_t w = ((tgt % nc) + nc) % nc;
        mat(2 * j, 2 * w + 1) += c;
      } else if (tgt >= 0 && tgt < nc) {
        mat(2 * j, 2 * tgt + 1) += c;
      }
    }
    for (const auto& [d, c] : model.ba) {
      const std::ptrdiff_t tgt = j + d;
      if (bc == Boundary::periodic) {
        const std::ptrdiff_t w = ((tgt % nc) + nc) % nc;
        mat(2 * j + 1, 2 * w) += c;
      } else if (tgt >= 0 && tgt < nc) {
        mat(2 * j + 1, 2 * tgt) += c;
      }
    }
  }
  return mat;
}

Model mirrored(const Model& model) {
  Model out;
  for (const auto& [d, c] : model.ba) out.ab[-d] = c;
  for (const auto& [b, c] : model.ab) out.ba[-b] = c;
  out.c_i = model.c_i;
  out.c_z = model.c_z;
  return out;
}

}  // namespace braidkit
