#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "braidkit/model.hpp"

namespace braidkit {

// Braiding index from the winding of det of the traceless Bloch matrix as k
// sweeps one Brillouin zone. Adaptive refinement keeps each accumulated phase
// step below pi/2; if the rounded result is farther than 0.05 from an integer
// the grid is doubled (up to 4x). Throws DomainError when det vanishes on the
// sweep (phase boundary or exceptional point).
int xi_integral(const Model& model, std::size_t samples = 256);

// Same invariant counted algebraically: N(roots of the characteristic
// polynomial strictly inside the unit circle, tol 1e-9) - M at the reference
// energy E = tr H / 2.
struct XiRootsResult {
  int xi = 0;
  bool boundary = false;  // a root sat on the unit circle within tolerance
};
XiRootsResult xi_roots(const Model& model);

// Generalized winding around an arbitrary complex reference energy:
// winding of det(H(k) - E I) / 2pi. Throws DomainError when E lies on the
// periodic spectrum.
int xi_ref(const Model& model, cplx energy, std::size_t samples = 256);

// Root count of the characteristic polynomial inside/outside the unit circle
// at reference energy E (m + xi_ref inside, n - xi_ref outside for the
// three-coupling chain).
struct RootSplit {
  std::size_t inside = 0;
  std::size_t on = 0;
  std::size_t outside = 0;
};
RootSplit root_split(const Model& model, cplx energy, double tol = 1e-9);

// Closed-form zeros of the off-diagonal entries for the three-coupling
// chain: family one solves beta^m = -c_ab_neg_m / c_ab0 (zeros of a12),
// family two solves beta^n = -c_ab0 / c_ba_n (zeros of a21). Each family is
// sorted by argument.
struct OffDiagonalZeros {
  std::vector<cplx> first;
  std::vector<cplx> second;
};
OffDiagonalZeros off_diagonal_zeros(const Model& model);

// Region rule for the three-coupling chain: xi from which zero families fall
// inside the unit circle (both outside -> -m; first only -> 0; both inside
// -> n; second only -> n - m). Requires a chiral model (c_i = c_z = 0
// contribute nothing here; the rule reads only the couplings).
int xi_from_zero_regions(const Model& model);

// One crossing in the braid diagram of the two energy strands.
struct Crossing {
  double k = 0.0;
  int sign = 0;  // +1: generator sigma_1, -1: its inverse
};

// Braid word of the two-strand energy braid over one Brillouin zone.
struct BraidWord {
  std::vector<Crossing> crossings;  // ordered by k
  int exponent_sum = 0;             // equals the braiding index
  bool closure_swaps = false;       // strand endpoints exchange at k = 2pi
};
BraidWord braid_word(const Model& model, std::size_t samples = 4096);

// Compact text form, e.g. "s1 s1" or "s1^-1 s1^-1 s1^-1"; empty word -> "e".
std::string braid_word_text(const BraidWord& word);

// Knot/link of the braid closure keyed by |exponent sum|: 0 unlink, 1 unknot,
// 2 Hopf link, 3 trefoil, else "other(N)".
std::string closure_name(int exponent_sum);

}  // namespace braidkit
