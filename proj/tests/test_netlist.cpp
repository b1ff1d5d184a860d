#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "braidkit/circuit.hpp"
#include "braidkit/model.hpp"
#include "braidkit/netlist.hpp"
#include "braidkit/types.hpp"

using namespace braidkit;

namespace {

CircuitParams reference_params() {
  const Model m = Model::three_coupling(2, 1, 1.0, 0.2, 0.4255);
  return synthesize(m, 4.7e-9);
}

// Lines outside the .SUBCKT block whose name starts with `prefix`.
std::size_t count_cards(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  std::size_t count = 0;
  bool in_subckt = false;
  while (std::getline(in, line)) {
    if (line.rfind(".SUBCKT", 0) == 0) in_subckt = true;
    if (line.rfind(".ENDS", 0) == 0) {
      in_subckt = false;
      continue;
    }
    if (in_subckt || line.empty() || line[0] == '*' || line[0] == '.')
      continue;
    if (line.rfind(prefix, 0) == 0) ++count;
  }
  return count;
}

void check_matches_laplacian(const CircuitParams& p, std::size_t cells,
                             Boundary bc, double omega) {
  const std::string text = netlist_export(p, cells, bc);
  const CMatrix got = netlist_admittance(text, omega);
  const CMatrix want = laplacian_real(p, omega, cells, bc);
  REQUIRE(got.rows() == want.rows());
  const double scale = omega * p.c0;
  double worst = 0.0;
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      worst = std::max(worst, std::abs(got(i, j) - want(i, j)));
  CHECK(worst < 1e-12 * scale);
}

}  // namespace

TEST_CASE("card counts for the periodic reference chain") {
  CircuitParams p = reference_params();
  p.r0 = 20.0;
  const std::string text = netlist_export(p, 10, Boundary::periodic);
  CHECK(count_cards(text, "L") == 20);
  CHECK(count_cards(text, "R0") == 20);
  CHECK(count_cards(text, "C0") == 10);
  CHECK(count_cards(text, "X") == 20);
  CHECK(count_cards(text, "CC") == 0);
  CHECK(netlist_parse(text).n_elements == 70);
}

TEST_CASE("open boundaries drop wrap converters and add compensation") {
  CircuitParams p = reference_params();
  p.r0 = 20.0;
  const std::string text = netlist_export(p, 10, Boundary::open);
  // m = 2 drops two XM wraps, n = 1 drops one XN wrap: 8 + 9 converters.
  CHECK(count_cards(text, "X") == 17);
  CHECK(count_cards(text, "CC") == 3);
  CHECK(text.find("CCM") != std::string::npos);
  CHECK(text.find("CCN") != std::string::npos);
  CHECK(netlist_parse(text).n_elements == 70);
}

TEST_CASE("header records the chain geometry") {
  const CircuitParams p = reference_params();
  const std::string pbc = netlist_export(p, 6, Boundary::periodic);
  CHECK(pbc.find("cells=6") != std::string::npos);
  CHECK(pbc.find("bc=pbc") != std::string::npos);
  CHECK(pbc.find("f=200k") != std::string::npos);
  CHECK(pbc.find(".SUBCKT INIC") != std::string::npos);
  CHECK(pbc.find(".END") != std::string::npos);

  const ParsedNetlist meta = netlist_parse(pbc);
  CHECK(meta.cells == 6);
  CHECK(meta.bc == Boundary::periodic);
  CHECK(meta.f_res == doctest::Approx(200e3));

  const std::string obc = netlist_export(p, 6, Boundary::open);
  CHECK(netlist_parse(obc).bc == Boundary::open);
}

TEST_CASE("parsed admittance reproduces the ideal Laplacian") {
  const CircuitParams p = reference_params();
  const double w = two_pi * p.f_res;
  check_matches_laplacian(p, 6, Boundary::periodic, w);
  check_matches_laplacian(p, 6, Boundary::open, w);
}

TEST_CASE("parsed admittance includes the grounding resistors") {
  CircuitParams p = reference_params();
  p.r0 = 20.0;
  check_matches_laplacian(p, 5, Boundary::periodic, two_pi * p.f_res);
}

TEST_CASE("series resistance rides through the internal inductor nodes") {
  CircuitParams p = reference_params();
  p.esr = 0.75;
  const std::string text = netlist_export(p, 5, Boundary::periodic);
  CHECK(text.find("NLA") != std::string::npos);  // internal node names
  check_matches_laplacian(p, 5, Boundary::periodic, two_pi * p.f_res);
}

TEST_CASE("leaky converters split their halves asymmetrically") {
  CircuitParams p = reference_params();
  p.leak = 0.1;
  check_matches_laplacian(p, 6, Boundary::periodic, two_pi * p.f_res);
  check_matches_laplacian(p, 6, Boundary::open, two_pi * p.f_res);
}

TEST_CASE("reciprocal control chains use plain capacitors both ways") {
  CircuitParams p = reference_params();
  p.reciprocal = true;
  check_matches_laplacian(p, 6, Boundary::periodic, two_pi * p.f_res);
  check_matches_laplacian(p, 6, Boundary::open, two_pi * p.f_res);
}

TEST_CASE("negative coupling polarity survives the round trip") {
  const Model m = Model::three_coupling(2, 1, 1.0, -0.2, 0.4255);
  const CircuitParams p = synthesize(m, 4.7e-9);
  REQUIRE(p.sign_m == -1);
  check_matches_laplacian(p, 6, Boundary::open, two_pi * p.f_res);
  const std::string text = netlist_export(p, 6, Boundary::open);
  CHECK(text.find("POL=-1") != std::string::npos);
}

TEST_CASE("off-resonance frequencies are handled too") {
  const CircuitParams p = reference_params();
  check_matches_laplacian(p, 5, Boundary::periodic, two_pi * 137e3);
}

TEST_CASE("engineering suffix formatting") {
  CHECK(si_format(4.7e-9) == "4.7n");
  CHECK(si_format(94.52e-6) == "94.52u");
  CHECK(si_format(200e3) == "200k");
  CHECK(si_format(0.1) == "100m");
  CHECK(si_format(1e6) == "1meg");
  CHECK(si_format(20.0) == "20");
  CHECK(si_format(1e-11) == "10p");
}

TEST_CASE("engineering suffix parsing") {
  CHECK(si_parse("4.7n") == doctest::Approx(4.7e-9).epsilon(1e-15));
  CHECK(si_parse("1.5meg") == doctest::Approx(1.5e6));
  CHECK(si_parse("10p") == doctest::Approx(1e-11));
  CHECK(si_parse("3f") == doctest::Approx(3e-15));
  CHECK(si_parse("42") == doctest::Approx(42.0));
  CHECK(si_parse("100m") == doctest::Approx(0.1));
  CHECK(si_parse("2.2u") == doctest::Approx(2.2e-6));
  CHECK(si_parse("5k") == doctest::Approx(5000.0));
}

TEST_CASE("round trip through a file") {
  const CircuitParams p = reference_params();
  const std::string path = "/tmp/braidkit_netlist_test.cir";
  netlist_write(p, 4, Boundary::periodic, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == netlist_export(p, 4, Boundary::periodic));
  std::remove(path.c_str());

  CHECK_THROWS_AS(
      netlist_write(p, 4, Boundary::periodic, "/nonexistent/dir/x.cir"),
      IoError);
}

TEST_CASE("malformed netlists are rejected") {
  CHECK_THROWS_AS(netlist_parse(""), IoError);
  CHECK_THROWS_AS(netlist_parse("* no header\n.END\n"), IoError);
  CHECK_THROWS_AS(
      netlist_admittance("* cells=2 bc=pbc f=200k\nL1 A1\n.END\n", 1.0),
      IoError);
  CHECK_THROWS_AS(
      netlist_admittance("* cells=2 bc=pbc f=200k\nQ1 A1 0 5n\n.END\n", 1.0),
      IoError);
}

TEST_CASE("chains shorter than the converter reach are rejected") {
  const CircuitParams p = reference_params();  // m = 2, n = 1 needs 4 cells
  CHECK_THROWS_AS(netlist_export(p, 3, Boundary::open), DomainError);
}
