#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "braidkit/braid.hpp"
#include "braidkit/model.hpp"
#include "braidkit/spectra.hpp"
#include "braidkit/types.hpp"

using namespace braidkit;

namespace {

Model chain(double cabm, double cban) {
  return Model::three_coupling(3, 1, 1.0, cabm, cban);
}

}  // namespace

TEST_CASE("periodic spectrum enumerates both bands on the k grid") {
  const Model m = chain(1.4, 1.6);
  const std::vector<cplx> s = pbc_spectrum(m, 16);
  REQUIRE(s.size() == 32);
  // k = 0 eigenvalues +-sqrt(2.4 * 2.6) must appear.
  const double e0 = std::sqrt(2.4 * 2.6);
  auto contains = [&](cplx want) {
    for (const cplx& v : s)
      if (std::abs(v - want) < 1e-12) return true;
    return false;
  };
  CHECK(contains(cplx(e0)));
  CHECK(contains(cplx(-e0)));
}

TEST_CASE("open chain in the deep phase: a zero-mode pair on the left edge") {
  const Model m = chain(1.4, 1.6);
  std::vector<ChainState> states = chain_states(m, 20, Boundary::open);
  REQUIRE(states.size() == 40);

  std::vector<std::size_t> order(states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(states[a].energy) < std::abs(states[b].energy);
  });

  // Finite-size splitting leaves the pair near (inside/outside modulus)^N,
  // about 3e-3 at 20 cells; far below every bulk energy but not at 1e-6.
  const double e0 = std::abs(states[order[0]].energy);
  const double e1 = std::abs(states[order[1]].energy);
  const double e2 = std::abs(states[order[2]].energy);
  CHECK(e0 > 2.8e-3);
  CHECK(e1 < 3.1e-3);
  CHECK(e2 > 0.3);

  CHECK(states[order[0]].left);
  CHECK(states[order[1]].left);
  CHECK(states[order[0]].weight_left > 0.5);
  CHECK(states[order[1]].weight_left > 0.5);

  // Every bulk state piles on the right edge (skin effect).
  for (std::size_t i = 2; i < order.size(); ++i)
    CHECK_FALSE(states[order[i]].left);

  CHECK(left_fraction(m, 20) == doctest::Approx(0.05));
}

TEST_CASE("zero-mode filter keyed to the matrix scale") {
  const Model m = chain(1.4, 1.6);
  const std::vector<ChainState> states = chain_states(m, 20, Boundary::open);
  const double norm = real_space_matrix(m, 20, Boundary::open).norm_fro();
  CHECK(zero_modes(states, norm).empty());          // default 1e-6: too tight
  CHECK(zero_modes(states, norm, 1e-3).size() == 2);
}

TEST_CASE("mirrored chain flips every localization side") {
  const Model m = chain(1.4, 1.6);
  CHECK(left_fraction(mirrored(m), 20) == doctest::Approx(0.95));
}

TEST_CASE("fully right-pumping phase leaves no left states") {
  // Deep in the xi = -3 region every reference winding is negative, so all
  // 40 states pile on the right edge.
  CHECK(left_fraction(chain(2.5, -0.4), 20) == doctest::Approx(0.0));
  CHECK(left_fraction(chain(1.4, -0.4), 20) == doctest::Approx(0.0));
  // (2.5, -2.5) looks symmetric but sits in the xi = -2 phase: the second
  // zero family is inside the unit circle, so the two edge modes reappear.
  CHECK(xi_roots(chain(2.5, -2.5)).xi == -2);
  CHECK(left_fraction(chain(2.5, -2.5), 20) == doctest::Approx(0.05));
}

TEST_CASE("bipolar phase: localization side follows the reference winding") {
  const Model m = chain(0.8, 1.1);
  const std::vector<ChainState> states = chain_states(m, 20, Boundary::open);
  std::size_t matched = 0, unpredicted = 0;
  for (const ChainState& s : states) {
    const int dir = nhse_direction(m, s.energy);
    if (dir == 0) {
      ++unpredicted;
      continue;
    }
    const bool want_left = dir > 0;
    if (s.left == want_left) ++matched;
  }
  // Four junction states carry no winding prediction; everything else obeys.
  CHECK(unpredicted == 4);
  CHECK(matched == states.size() - unpredicted);
}

TEST_CASE("junction states of the bipolar phase sit at the frozen energies") {
  const Model m = chain(0.8, 1.1);
  const std::vector<ChainState> states = chain_states(m, 20, Boundary::open);
  std::vector<cplx> zero_dir;
  for (const ChainState& s : states)
    if (nhse_direction(m, s.energy) == 0) zero_dir.push_back(s.energy);
  REQUIRE(zero_dir.size() == 4);
  for (const cplx& e : zero_dir) {
    CHECK(std::abs(std::abs(e.real()) - 0.6492) < 5e-3);
    CHECK(std::abs(std::abs(e.imag()) - 0.1038) < 5e-3);
  }
}

TEST_CASE("localization direction at frozen reference energies") {
  CHECK(nhse_direction(chain(1.4, 1.6), cplx(0.0, 1.0)) == -1);
  CHECK(nhse_direction(chain(0.8, 1.1), cplx(0.3, 0.0)) == 1);
  CHECK(nhse_direction(chain(0.8, 1.1), cplx(1.2, 0.0)) == -1);
  CHECK(nhse_direction(chain(1.4, 1.6), cplx(1000.0, 0.0)) == 0);
}

TEST_CASE("degenerate-state count from the braid data") {
  CHECK(nhse_state_count(3, 1, -2).right == 3);
  CHECK(nhse_state_count(3, 1, -2).left == 0);
  CHECK(nhse_state_count(3, 1, -1).right == 1);
  CHECK(nhse_state_count(3, 1, 1).left == 1);
  CHECK(nhse_state_count(3, 1, 1).right == 0);
  CHECK(nhse_state_count(2, 1, 1).left == 1);
  CHECK(nhse_state_count(3, 1, 0).left == 0);
  CHECK(nhse_state_count(3, 1, 0).right == 0);
  CHECK(nhse_state_count(3, 1, 4).left == 35);  // C(7, 4)
}

TEST_CASE("finite-size probe of the generalized Brillouin zone shrinks") {
  const Model m = chain(1.4, 1.6);
  const double r12 = gbz_residual(m, 12);
  const double r24 = gbz_residual(m, 24);
  const double r48 = gbz_residual(m, 48);
  CHECK(std::abs(r12 - 0.0193) < 2e-3);
  CHECK(std::abs(r24 - 0.0151) < 2e-3);
  CHECK(std::abs(r48 - 0.0090) < 2e-3);
  CHECK(r24 < r12);
  CHECK(r48 < r24);
}

TEST_CASE("oversized chains are rejected before diagonalization") {
  CHECK_THROWS_AS(chain_states(chain(1.4, 1.6), 1001, Boundary::open),
                  DomainError);
}

TEST_CASE("participation ratio distinguishes edge from extended states") {
  const Model m = chain(1.4, 1.6);
  const std::vector<ChainState> states = chain_states(m, 20, Boundary::open);
  double max_ipr = 0.0;
  for (const ChainState& s : states) {
    CHECK(s.ipr > 0.0);
    CHECK(s.ipr <= 1.0 + 1e-12);
    max_ipr = std::max(max_ipr, s.ipr);
  }
  // Skin and edge states concentrate on a few sites.
  CHECK(max_ipr > 0.2);
}
