#pragma once

#include <cstddef>
#include <string>

#include "braidkit/circuit.hpp"
#include "braidkit/linalg.hpp"
#include "braidkit/model.hpp"

namespace braidkit {

// Engineering notation for element values: shortest decimal mantissa plus a
// suffix from meg/k/m/u/n/p, e.g. 4.7e-9 -> "4.7n". The parser additionally
// accepts f (1e-15); suffixes are case-insensitive. si_parse throws IoError
// on malformed input.
std::string si_format(double v);
double si_parse(const std::string& text);

// SPICE netlist text for a chain of `cells` unit cells: nodes A1..AN and
// B1..BN against ground 0, grounding inductors (esr in series when nonzero),
// optional r0 resistors, plain capacitors for the c0 bonds, and one INIC
// subcircuit instance per unidirectional bond (source/target order and a
// POL=+-1 parameter carry orientation and coupling sign). Open boundaries
// drop the wrap-around converters and add the grounded compensation
// capacitors. Values use engineering suffixes (p, n, u, m, k, meg).
std::string netlist_export(const CircuitParams& p, std::size_t cells,
                           Boundary bc);

// Writes the netlist to a file (LF line endings). Throws IoError on failure.
void netlist_write(const CircuitParams& p, std::size_t cells, Boundary bc,
                   const std::string& path);

// Parses a netlist produced by netlist_export back into an admittance matrix
// at angular frequency omega. R/L/C cards get standard two-terminal stamps
// (series chains through internal nodes are eliminated exactly); X cards of
// the INIC subcircuit get the ideal converter stamp. The result reproduces
// laplacian_real for ideal parameters. Throws IoError on malformed input.
struct ParsedNetlist {
  std::size_t cells = 0;
  Boundary bc = Boundary::periodic;
  double f_res = 0.0;       // resonance recorded in the header
  std::size_t n_elements = 0;
};
ParsedNetlist netlist_parse(const std::string& text);
CMatrix netlist_admittance(const std::string& text, double omega);

}  // namespace braidkit
