#include "braidkit/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "braidkit/polyalg.hpp"

namespace braidkit {

std::vector<cplx> pbc_spectrum(const Model& model, std::size_t cells) {
  std::vector<cplx> out;
  out.reserve(2 * cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const auto [e1, e2] = model.bloch(two_pi * j / cells).eigenvalues();
    out.push_back(e1);
    out.push_back(e2);
  }
  return out;
}

std::vector<ChainState> chain_states(const Model& model, std::size_t cells,
                                     Boundary bc) {
  const std::size_t dim = 2 * cells;
  if (dim > 2000)
    throw DomainError("chain diagonalization capped at 2000 sites");
  const CMatrix mat = real_space_matrix(model, cells, bc);
  const EigResult e = eig(mat, /*want_vectors=*/true);
  if (!e.converged)
    throw DomainError("chain eigensolver failed to converge");

  std::vector<ChainState> states(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    ChainState& st = states[j];
    st.energy = e.values[j];
    double total = 0.0, moment = 0.0, quart = 0.0, left = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
      const double w = std::norm(e.vectors(x, j));
      total += w;
      moment += static_cast<double>(x + 1) * w;  // sites numbered 1..2N
      quart += w * w;
      if (x < cells) left += w;  // left half of the chain
    }
    st.center_of_mass = moment / total;
    st.ipr = quart / (total * total);
    st.weight_left = left / total;
    st.left = st.center_of_mass < 0.5 * static_cast<double>(dim + 1);
  }
  std::sort(states.begin(), states.end(),
            [](const ChainState& a, const ChainState& b) {
              if (a.energy.real() != b.energy.real())
                return a.energy.real() < b.energy.real();
              return a.energy.imag() < b.energy.imag();
            });
  return states;
}

double left_fraction(const Model& model, std::size_t cells) {
  const std::vector<ChainState> states =
      chain_states(model, cells, Boundary::open);
  std::size_t n_left = 0;
  for (const ChainState& st : states)
    if (st.left) ++n_left;
  return static_cast<double>(n_left) / static_cast<double>(states.size());
}

std::vector<ChainState> zero_modes(const std::vector<ChainState>& states,
                                   double matrix_norm, double tol) {
  std::vector<ChainState> out;
  for (const ChainState& st : states)
    if (std::abs(st.energy) < tol * matrix_norm) out.push_back(st);
  return out;
}

namespace {

std::size_t binomial(int a, int b) {
  if (b < 0 || a < b) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= b; ++i)
    r = r * static_cast<std::size_t>(a - b + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

NhseCount nhse_state_count(int m, int n, int xi_r) {
  NhseCount c;
  if (xi_r < 0) c.right = binomial(n - xi_r, n + 1);
  if (xi_r > 0) c.left = binomial(m + xi_r, m + 1);
  return c;
}

int nhse_direction(const Model& model, cplx energy) {
  const int w = xi_ref(model, energy);
  if (w > 0) return 1;
  if (w < 0) return -1;
  return 0;
}

double gbz_residual(const Model& model, std::size_t cells) {
  const CMatrix mat = real_space_matrix(model, cells, Boundary::open);
  const EigResult e = eig(mat, /*want_vectors=*/false);
  if (!e.converged)
    throw DomainError("chain eigensolver failed to converge");

  // Clearing power: the root pair (M, M+1) in ascending modulus order must
  // coalesce for a bulk state of the infinite chain.
  int clearing = 0;
  if (!model.ab.empty() && !model.ba.empty())
    clearing = std::max(
        0, -(model.ab.begin()->first + model.ba.begin()->first));
  if (clearing < 1)
    throw DomainError("model has no left reach: no middle root pair");

  std::vector<double> gaps;
  for (const cplx en : e.values) {
    const RootResult rr = poly_roots(char_poly(model, en));
    if (rr.roots.size() < static_cast<std::size_t>(clearing) + 1) continue;
    gaps.push_back(std::abs(std::abs(rr.roots[clearing - 1]) -
                            std::abs(rr.roots[clearing])));
  }
  if (gaps.empty()) throw DomainError("no usable eigenvalues for GBZ probe");
  std::sort(gaps.begin(), gaps.end());
  const std::size_t h = gaps.size() / 2;
  if (gaps.size() % 2 == 1) return gaps[h];
  return 0.5 * (gaps[h - 1] + gaps[h]);
}

}  // namespace braidkit
