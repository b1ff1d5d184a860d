#pragma once

#include <cstddef>
#include <vector>

#include "braidkit/braid.hpp"
#include "braidkit/model.hpp"

namespace braidkit {

// Periodic-boundary spectrum from the Bloch matrix on a uniform k grid with
// cells points (k_j = 2 pi j / cells): the multiset equals the eigenvalues of
// the periodic real-space matrix.
std::vector<cplx> pbc_spectrum(const Model& model, std::size_t cells);

// One eigenstate of a finite chain with localization diagnostics.
struct ChainState {
  cplx energy;
  double center_of_mass = 0.0;  // sites indexed 1..2*cells
  double ipr = 0.0;             // inverse participation ratio
  bool left = false;            // center of mass strictly left of the middle
  double weight_left = 0.0;     // |psi|^2 fraction on the left half
};

// Full open- (or periodic-) boundary diagonalization. Dimension cap 2000
// sites (DomainError beyond). Throws DomainError when the eigensolver fails
// to converge.
std::vector<ChainState> chain_states(const Model& model, std::size_t cells,
                                     Boundary bc);

// Fraction of eigenstates localized on the left half of an open chain.
double left_fraction(const Model& model, std::size_t cells);

// States with |E| below tol * ||M||_fro: topological zero modes.
std::vector<ChainState> zero_modes(const std::vector<ChainState>& states,
                                   double matrix_norm, double tol = 1e-6);

// Predicted number of degenerate skin/zero states from the braiding data:
//   right count = C(n + |xi_r|, n + 1) when xi_r < 0,
//   left  count = C(m + xi_r, m + 1)  when xi_r > 0,
// with C(a, b) = 0 for a < b.
struct NhseCount {
  std::size_t left = 0;
  std::size_t right = 0;
};
NhseCount nhse_state_count(int m, int n, int xi_r);

// Localization side predicted for states at reference energy E:
// +1 (left) when xi_ref(E) > 0, -1 (right) when < 0, 0 when the winding
// vanishes (no prediction).
int nhse_direction(const Model& model, cplx energy);

// Finite-size probe of the generalized Brillouin zone: for each open-chain
// eigenvalue, the gap between the m-th and (m+1)-th root moduli of the
// characteristic polynomial (the pair that must coalesce in the infinite
// chain); returns the median over the spectrum. Shrinks as cells grow.
double gbz_residual(const Model& model, std::size_t cells);

}  // namespace braidkit
