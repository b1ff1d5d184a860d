#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "braidkit/model.hpp"

namespace braidkit {

// Component values of the RLC realization of a three-coupling chain.
// Capacitances are stored as positive values with explicit polarity signs;
// a negative Hamiltonian coupling becomes a positive capacitor driven
// through an inverting converter.
struct CircuitParams {
  int m = 2;  // cell reach of the c_m bond (B_j -> A_{j+m})
  int n = 1;  // cell reach of the c_n bond (A_j -> B_{j-n})

  double c0 = 0.0;  // reciprocal bond capacitance, farads
  double cm = 0.0;  // long-range unidirectional bond, farads (> 0)
  double cn = 0.0;  // short-range unidirectional bond, farads (> 0)
  int sign_m = 1;   // polarity of the c_m bond (+1 or -1)
  int sign_n = 1;   // polarity of the c_n bond

  double la = 0.0;  // grounding inductor on A sites, henries
  double lb = 0.0;  // grounding inductor on B sites, henries

  double f_res = 0.0;  // design resonance, Hz

  // Parasitics / operating extras.
  double r0 = std::numeric_limits<double>::infinity();  // grounding resistor
  double esr = 0.0;   // inductor series resistance, ohms
  double leak = 0.0;  // INIC reverse-transfer fraction lambda in [0, 1)

  // When set, the c_m / c_n bonds are plain reciprocal capacitors instead of
  // unidirectional converters (Hermitian control variant).
  bool reciprocal = false;

  // Resonance read off each sublattice: f = 1 / (2 pi sqrt(L (c0 + c))).
  double resonant_freq_a() const;  // from la and c0 + cn
  double resonant_freq_b() const;  // from lb and c0 + cm
  // True when la (c0 + cn) and lb (c0 + cm) disagree beyond 1e-6 relative.
  bool detuned() const;

  // Hamiltonian couplings realized by these components (farads, signed).
  Model realized_model() const;
};

// Picks L values so both sublattices resonate at f_target (f_target <= 0
// selects the 200 kHz default). The model must be a three-coupling chain
// with real couplings, c_ab0 > 0 and both intercell couplings nonzero;
// anything else throws DomainError("not circuit-representable").
CircuitParams synthesize(const Model& model, double c0_phys,
                         double f_target = 0.0);

// JSON round-trip; keys c_ab0 / c_abm / c_ban / l_a / l_b plus the reach,
// sign, resonance and parasitic fields.
std::string circuit_to_json(const CircuitParams& p);
CircuitParams circuit_from_json(const std::string& text);
CircuitParams circuit_from_json_file(const std::string& path);

// Bloch representation of the circuit Laplacian at angular frequency omega:
//   J(k) = i omega [[c0+cn-1/(omega^2 la),  -c0-cm' e^{-imk}],
//                   [-c0-cn' e^{+ink},      c0+cm-1/(omega^2 lb)]]
// (primes carry polarity; r0 adds 1/r0 and esr enters the inductor branch).
// At the design resonance with ideal elements J(k) = -i omega_r H(k).
Mat2 laplacian_k(const CircuitParams& p, double omega, double k);

// Real-space admittance matrix on `cells` cells (nodes A_j at 2j, B_j at
// 2j+1). Periodic wraps the converter bonds; open drops them and adds the
// grounded compensation capacitors that keep every diagonal uniform.
CMatrix laplacian_real(const CircuitParams& p, double omega, std::size_t cells,
                       Boundary bc);

// Round-trip through the Green's function: solve J v = e_j for every node to
// form G, invert G, and report the Frobenius norm of (G^-1 - J). Throws
// DomainError when J is singular or its 1-norm condition exceeds 1e12
// (driving at an undamped resonance; add r0).
struct GreensResult {
  CMatrix reconstructed;
  double error = 0.0;  // ||G^-1 - J||_F
};
GreensResult greens_reconstruct(const CircuitParams& p, double omega,
                                std::size_t cells, Boundary bc);

// Spectrum of i omega J interpreted as time-domain rates: eigenmodes with
// negative imaginary part grow exponentially. stable when
// min Im sigma >= -1e-9 * max |sigma|.
struct StabilityResult {
  double min_imag = 0.0;
  double max_abs = 0.0;
  bool stable = false;
};
StabilityResult stability_check(const CircuitParams& p, double omega,
                                std::size_t cells, Boundary bc);

// Effective one-way capacitance of a converter built from half-capacitors
// c1 (inverted leg) and c2 (direct leg): forward c1 + c2, reverse c2 - c1.
std::pair<double, double> inic_effective(double c1, double c2);

// Half-capacitor split that realizes total forward capacitance `c` with
// reverse leak fraction `leak`: c1 = c (1 - leak) / 2, c2 = c (1 + leak) / 2.
std::pair<double, double> inic_halves(double c, double leak);

// First-order RC rolloff frequency 1 / (2 pi R C), hertz.
double lowpass_3db(double r, double c);

// Multiplies every component value (couplings and inductors for params;
// coupling amplitudes and onsite terms for models) by an independent uniform
// draw from [1 - t, 1 + t], t = tolerance_pct / 100. Draw order is fixed:
// params c0, cm, cn, la, lb; model ab entries by ascending offset, then ba,
// then c_i, then c_z (zero entries consume no draw). tolerance_pct in [0,50).
CircuitParams disorder_sample(const CircuitParams& p, double tolerance_pct,
                              std::uint64_t seed);
Model disorder_sample(const Model& model, double tolerance_pct,
                      std::uint64_t seed);

}  // namespace braidkit
