#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "braidkit/braid.hpp"
#include "braidkit/circuit.hpp"
#include "braidkit/model.hpp"
#include "braidkit/types.hpp"

using namespace braidkit;

namespace {

// Coupling ratios (c_m / c_0, c_n / c_0) of the four reference phases,
// all with reach m = 2, n = 1 and c_0 = 4.7 nF.
struct Phase {
  double rm, rn;
  int xi;
};
const Phase kPhases[4] = {
    {0.2, 0.4255, 0}, {0.2, 4.255, 1}, {4.255, 0.4255, -2}, {4.255, 4.255, -1}};
const double kC0 = 4.7e-9;

CircuitParams phase_params(int i) {
  const Model m =
      Model::three_coupling(2, 1, 1.0, kPhases[i].rm, kPhases[i].rn);
  return synthesize(m, kC0);
}

}  // namespace

TEST_CASE("synthesis reproduces the reference component table") {
  const CircuitParams p = phase_params(0);
  CHECK(p.m == 2);
  CHECK(p.n == 1);
  CHECK(p.c0 == doctest::Approx(4.7e-9).epsilon(1e-12));
  CHECK(p.cm == doctest::Approx(0.94e-9).epsilon(1e-12));
  CHECK(p.cn == doctest::Approx(2.0e-9).epsilon(1e-3));  // exact: 1.99985 nF
  CHECK(p.sign_m == 1);
  CHECK(p.sign_n == 1);
  CHECK(p.la == doctest::Approx(94.52e-6).epsilon(1e-3));
  CHECK(p.lb == doctest::Approx(112.28e-6).epsilon(1e-3));
  CHECK(p.f_res == doctest::Approx(200e3));
  CHECK_FALSE(p.detuned());
  CHECK(p.resonant_freq_a() == doctest::Approx(200e3).epsilon(1e-9));
  CHECK(p.resonant_freq_b() == doctest::Approx(200e3).epsilon(1e-9));

  const CircuitParams p2 = phase_params(1);
  CHECK(p2.cn == doctest::Approx(20.0e-9).epsilon(1e-3));
  CHECK(p2.la == doctest::Approx(25.64e-6).epsilon(1e-3));
  const CircuitParams p3 = phase_params(2);
  CHECK(p3.cm == doctest::Approx(20.0e-9).epsilon(1e-3));
  CHECK(p3.lb == doctest::Approx(25.64e-6).epsilon(1e-3));
}

TEST_CASE("rounded catalog values are flagged detuned but stay on frequency") {
  CircuitParams p;
  p.m = 2;
  p.n = 1;
  p.c0 = 4.7e-9;
  p.cm = 0.94e-9;
  p.cn = 2.0e-9;
  p.la = 94.52e-6;
  p.lb = 112.28e-6;
  p.f_res = 200e3;
  CHECK(p.detuned());
  CHECK(p.resonant_freq_a() == doctest::Approx(200e3).epsilon(1e-3));
  CHECK(p.resonant_freq_b() == doctest::Approx(200e3).epsilon(1e-3));
}

TEST_CASE("realized couplings carry the braid phase of the design model") {
  for (int i = 0; i < 4; ++i) {
    const Model realized = phase_params(i).realized_model();
    CHECK(xi_roots(realized).xi == kPhases[i].xi);
  }
}

TEST_CASE("negative couplings become positive capacitors with polarity") {
  const Model m = Model::three_coupling(2, 1, 1.0, -0.3, 0.7);
  const CircuitParams p = synthesize(m, kC0);
  CHECK(p.cm > 0.0);
  CHECK(p.sign_m == -1);
  CHECK(p.sign_n == 1);
  const Model back = p.realized_model();
  CHECK(std::abs(back.ab.at(-2) - cplx(-0.3 * kC0)) < 1e-21);
  CHECK(std::abs(back.ba.at(1) - cplx(0.7 * kC0)) < 1e-21);
}

TEST_CASE("models outside the three-coupling template are rejected") {
  auto expect_reject = [](const Model& m) {
    try {
      synthesize(m, kC0);
      FAIL_CHECK("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("not circuit-representable") !=
            std::string::npos);
    }
  };
  expect_reject(Model::three_coupling(2, 1, 1.0, cplx(0.0, 0.5), 0.7));
  expect_reject(Model::three_coupling(2, 1, 1.0, 0.5, 0.7, 0.3, 0.0));
  expect_reject(Model::three_coupling(2, 1, -1.0, 0.5, 0.7));
  expect_reject(Model::three_coupling(2, 1, 1.0, 0.0, 0.7));
  Model dense;
  dense.ab[0] = 1.0;
  dense.ab[-1] = 0.2;
  dense.ab[-2] = 0.2;
  dense.ba[0] = 1.0;
  dense.ba[1] = 0.4;
  expect_reject(dense);
}

TEST_CASE("Bloch Laplacian at resonance equals -i omega H") {
  for (int i = 0; i < 4; ++i) {
    const CircuitParams p = phase_params(i);
    const double w = two_pi * p.f_res;
    const Model realized = p.realized_model();
    double worst = 0.0;
    for (int j = 0; j < 64; ++j) {
      const double k = two_pi * j / 64.0;
      const Mat2 jk = laplacian_k(p, w, k);
      const Mat2 want = realized.bloch(k) * cplx(0.0, -w);
      const double scale = want.max_abs();
      worst = std::max(worst, (jk - want).max_abs() / scale);
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("grounding resistor enters the diagonal as 1/r0") {
  CircuitParams p = phase_params(0);
  const double w = two_pi * p.f_res;
  const Mat2 ideal = laplacian_k(p, w, 0.7);
  p.r0 = 20.0;
  const Mat2 damped = laplacian_k(p, w, 0.7);
  CHECK(std::abs((damped.a11 - ideal.a11) - cplx(0.05)) < 1e-15);
  CHECK(std::abs((damped.a22 - ideal.a22) - cplx(0.05)) < 1e-15);
  CHECK(std::abs(damped.a12 - ideal.a12) < 1e-18);
}

TEST_CASE("open-chain Laplacian matches the lattice matrix at resonance") {
  for (int i : {0, 2}) {
    const CircuitParams p = phase_params(i);
    const double w = two_pi * p.f_res;
    const CMatrix j = laplacian_real(p, w, 8, Boundary::open);
    const CMatrix h = real_space_matrix(p.realized_model(), 8, Boundary::open);
    const cplx factor(0.0, -w);
    double worst = 0.0;
    for (std::size_t r = 0; r < j.rows(); ++r)
      for (std::size_t c = 0; c < j.cols(); ++c)
        worst = std::max(worst, std::abs(j(r, c) - factor * h(r, c)));
    CHECK(worst < 1e-12 * w * kC0);
  }
}

TEST_CASE("periodic Laplacian spectrum matches the Bloch factorization") {
  const CircuitParams p = phase_params(2);
  const double w = two_pi * p.f_res;
  const std::size_t cells = 8;
  const CMatrix j = laplacian_real(p, w, cells, Boundary::periodic);
  std::vector<cplx> want;
  for (std::size_t q = 0; q < cells; ++q) {
    const auto [e1, e2] = laplacian_k(p, w, two_pi * q / cells).eigenvalues();
    want.push_back(e1);
    want.push_back(e2);
  }
  const EigResult e = eig(j, false);
  REQUIRE(e.converged);
  // Greedy nearest matching: conjugate pairs tie on real part, so sorting
  // could swap them between the two lists.
  std::vector<bool> used(want.size(), false);
  double worst = 0.0;
  for (const cplx& g : e.values) {
    double best = 1e300;
    std::size_t best_idx = 0;
    for (std::size_t idx = 0; idx < want.size(); ++idx) {
      if (used[idx]) continue;
      if (std::abs(g - want[idx]) < best) {
        best = std::abs(g - want[idx]);
        best_idx = idx;
      }
    }
    used[best_idx] = true;
    worst = std::max(worst, best);
  }
  CHECK(worst < 1e-8 * w * kC0);
}

TEST_CASE("Green's function round trip at 20 ohm damping") {
  for (int i = 0; i < 4; ++i) {
    CircuitParams p = phase_params(i);
    p.r0 = 20.0;
    const double w = two_pi * p.f_res;
    for (Boundary bc : {Boundary::periodic, Boundary::open}) {
      const GreensResult g = greens_reconstruct(p, w, 10, bc);
      CHECK(g.error < 1e-8);
    }
  }
}

TEST_CASE("undamped drive at a band touching is rejected") {
  // cm = c0 with inverted polarity puts a dark mode at k = 0; without r0 the
  // periodic Laplacian is singular at resonance.
  const Model m = Model::three_coupling(2, 1, 1.0, -1.0, 0.4255);
  const CircuitParams p = synthesize(m, kC0);
  const double w = two_pi * p.f_res;
  try {
    greens_reconstruct(p, w, 10, Boundary::periodic);
    FAIL_CHECK("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("r0") != std::string::npos);
  }
}

TEST_CASE("damped circuits are stable, undamped ones ring up") {
  for (int i = 0; i < 4; ++i) {
    CircuitParams p = phase_params(i);
    const double w = two_pi * p.f_res;
    p.r0 = 20.0;
    CHECK(stability_check(p, w, 10, Boundary::periodic).stable);
  }
  CircuitParams p = phase_params(0);
  const double w = two_pi * p.f_res;
  const StabilityResult undamped =
      stability_check(p, w, 10, Boundary::periodic);
  CHECK_FALSE(undamped.stable);

  // The reciprocal control stays marginal even without damping.
  p.reciprocal = true;
  CHECK(stability_check(p, w, 10, Boundary::periodic).stable);
}

TEST_CASE("converter half-capacitor arithmetic") {
  const auto [fwd, rev] = inic_effective(0.47e-9, 0.47e-9);
  CHECK(fwd == doctest::Approx(0.94e-9));
  CHECK(rev == doctest::Approx(0.0));

  const auto [h1, h2] = inic_halves(0.94e-9, 0.0);
  CHECK(h1 == doctest::Approx(0.47e-9));
  CHECK(h2 == doctest::Approx(0.47e-9));

  // Leaky split: forward total preserved, reverse fraction = leak.
  const auto [l1, l2] = inic_halves(2.0e-9, 0.1);
  const auto [f2, r2] = inic_effective(l1, l2);
  CHECK(f2 == doctest::Approx(2.0e-9));
  CHECK(r2 == doctest::Approx(0.2e-9));
}

TEST_CASE("RC rolloff frequencies") {
  CHECK(lowpass_3db(1000.0, 4.7e-9) == doctest::Approx(33862.75).epsilon(1e-4));
  CHECK(lowpass_3db(1000.0, 1.0e-9) == doctest::Approx(159154.94).epsilon(1e-4));
}

TEST_CASE("component disorder is deterministic and bounded") {
  const CircuitParams p = phase_params(0);
  const CircuitParams a = disorder_sample(p, 5.0, 42);
  const CircuitParams b = disorder_sample(p, 5.0, 42);
  CHECK(a.c0 == b.c0);
  CHECK(a.la == b.la);
  const CircuitParams c = disorder_sample(p, 5.0, 43);
  CHECK(a.c0 != c.c0);

  for (const CircuitParams& s : {a, c}) {
    CHECK(s.c0 >= 0.95 * p.c0);
    CHECK(s.c0 <= 1.05 * p.c0);
    CHECK(s.cm >= 0.95 * p.cm);
    CHECK(s.cm <= 1.05 * p.cm);
    CHECK(s.la >= 0.95 * p.la);
    CHECK(s.la <= 1.05 * p.la);
    CHECK(s.lb >= 0.95 * p.lb);
    CHECK(s.lb <= 1.05 * p.lb);
  }

  const CircuitParams zero = disorder_sample(p, 0.0, 7);
  CHECK(zero.c0 == p.c0);
  CHECK(zero.la == p.la);

  CHECK_THROWS_AS(disorder_sample(p, 50.0, 1), DomainError);
  CHECK_THROWS_AS(disorder_sample(p, -1.0, 1), DomainError);
}

TEST_CASE("model disorder only touches live couplings") {
  const Model m = Model::three_coupling(3, 1, 1.0, 1.4, 1.6);
  const Model d = disorder_sample(m, 5.0, 9);
  CHECK(d.ab.size() == m.ab.size());
  CHECK(std::abs(d.ab.at(-3)) >= 0.95 * 1.4);
  CHECK(std::abs(d.ab.at(-3)) <= 1.05 * 1.4);
  CHECK(d.c_i == 0.0);
  CHECK(d.c_z == 0.0);
  const Model d2 = disorder_sample(m, 5.0, 9);
  CHECK(d.ab.at(-3) == d2.ab.at(-3));
}

TEST_CASE("circuit JSON round trip") {
  CircuitParams p = phase_params(3);
  p.r0 = 20.0;
  p.esr = 0.5;
  p.leak = 0.05;
  p.sign_m = -1;
  const CircuitParams q = circuit_from_json(circuit_to_json(p));
  CHECK(q.m == p.m);
  CHECK(q.n == p.n);
  CHECK(q.c0 == doctest::Approx(p.c0).epsilon(1e-12));
  CHECK(q.cm == doctest::Approx(p.cm).epsilon(1e-12));
  CHECK(q.cn == doctest::Approx(p.cn).epsilon(1e-12));
  CHECK(q.sign_m == -1);
  CHECK(q.la == doctest::Approx(p.la).epsilon(1e-12));
  CHECK(q.lb == doctest::Approx(p.lb).epsilon(1e-12));
  CHECK(q.r0 == doctest::Approx(20.0));
  CHECK(q.esr == doctest::Approx(0.5));
  CHECK(q.leak == doctest::Approx(0.05));
  CHECK(q.reciprocal == p.reciprocal);

  // Infinite r0 is omitted from the JSON and restored on parse.
  CircuitParams ideal = phase_params(0);
  const std::string text = circuit_to_json(ideal);
  CHECK(text.find("r0") == std::string::npos);
  CHECK(std::isinf(circuit_from_json(text).r0));

  CHECK_THROWS_AS(circuit_from_json("{"), IoError);
  CHECK_THROWS_AS(circuit_from_json_file("/nonexistent.json"), IoError);
}

TEST_CASE("default resonance target is 200 kHz") {
  const Model m = Model::three_coupling(2, 1, 1.0, 0.2, 0.4255);
  CHECK(synthesize(m, kC0).f_res == doctest::Approx(200e3));
  CHECK(synthesize(m, kC0, 100e3).f_res == doctest::Approx(100e3));
}
