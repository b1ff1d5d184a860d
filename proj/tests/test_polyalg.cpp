#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "braidkit/polyalg.hpp"
#include "braidkit/types.hpp"

using namespace braidkit;

TEST_CASE("quartic with one root inside the unit circle and three outside") {
  // 1.6 b^4 + b^3 + 2.24 b + 1.4 = (b^3 + 1.4)(1.6 b + 1)
  const std::vector<cplx> c = {1.4, 2.24, 0.0, 1.0, 1.6};
  const RootResult r = poly_roots(c);
  REQUIRE(r.roots.size() == 4);
  CHECK(r.degree_drop == 0);

  // Ascending modulus: -0.625 first, then the three cube roots of -1.4.
  CHECK(std::abs(r.roots[0] - cplx(-0.625)) < 1e-10);
  const double mod = std::pow(1.4, 1.0 / 3.0);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(std::abs(r.roots[i]) - mod) < 1e-10);

  const ModulusCount mc = count_by_modulus(r.roots, 1.0, 1e-9);
  CHECK(mc.inside == 1);
  CHECK(mc.on == 0);
  CHECK(mc.outside == 3);

  for (double res : r.residuals) CHECK(res <= r.residual_bound);
}

TEST_CASE("known quadratic roots come back sorted by modulus") {
  // (z - 1)(z + 2) = z^2 + z - 2
  const RootResult r = poly_roots({-2.0, 1.0, 1.0});
  REQUIRE(r.roots.size() == 2);
  CHECK(std::abs(r.roots[0] - cplx(1.0)) < 1e-12);
  CHECK(std::abs(r.roots[1] - cplx(-2.0)) < 1e-12);
}

TEST_CASE("trailing zero coefficients produce exact zero roots") {
  // z^2 (z - 1)
  const RootResult r = poly_roots({0.0, 0.0, -1.0, 1.0});
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0] == cplx(0.0));
  CHECK(r.roots[1] == cplx(0.0));
  CHECK(std::abs(r.roots[2] - cplx(1.0)) < 1e-12);

  // The double zero forms one tie group covering the first two indices.
  bool found = false;
  for (const auto& [lo, hi] : r.tie_groups)
    if (lo == 0 && hi == 2) found = true;
  CHECK(found);
}

TEST_CASE("negligible leading coefficients are trimmed and counted") {
  const RootResult r = poly_roots({1.0, 1.0, 1e-20});
  CHECK(r.degree_drop == 1);
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0] - cplx(-1.0)) < 1e-10);
}

TEST_CASE("degenerate inputs throw") {
  CHECK_THROWS_AS(poly_roots({}), DomainError);
  CHECK_THROWS_AS(poly_roots({0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(poly_roots({cplx(1e-320), cplx(1e-321)}), DomainError);
}

TEST_CASE("constant-only polynomial has no roots") {
  const RootResult r = poly_roots({cplx(3.0, 1.0)});
  CHECK(r.roots.empty());
  CHECK(r.degree_drop == 0);
}

TEST_CASE("evaluation matches a direct power sum") {
  const std::vector<cplx> c = {cplx(1.0, -2.0), 0.5, cplx(0.0, 3.0), 2.0};
  const cplx z(0.7, -0.4);
  cplx direct = 0.0;
  cplx zp = 1.0;
  for (const cplx& ck : c) {
    direct += ck * zp;
    zp *= z;
  }
  CHECK(std::abs(poly_eval(c, z) - direct) < 1e-14);

  // Derivative via central difference.
  const double h = 1e-6;
  const cplx num =
      (poly_eval(c, z + cplx(h)) - poly_eval(c, z - cplx(h))) / cplx(2 * h);
  CHECK(std::abs(poly_eval_deriv(c, z) - num) < 1e-7);
}

TEST_CASE("Vieta sums and products agree with computed roots") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 1 + static_cast<int>(rng() % 9);
    std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
    for (cplx& ck : c) ck = cplx(u(rng), u(rng));
    // Keep the polynomial honestly of full degree.
    if (std::abs(c.back()) < 0.2) c.back() += cplx(0.5, 0.5);

    const RootResult r = poly_roots(c);
    REQUIRE(static_cast<int>(r.roots.size()) == deg);

    cplx sum = 0.0, prod = 1.0;
    for (const cplx& z : r.roots) {
      sum += z;
      prod *= z;
    }
    CHECK(std::abs(sum - vieta_sum(c)) < 1e-6);
    CHECK(std::abs(prod - vieta_product(c)) < 1e-6);
  }
}

TEST_CASE("roots on the counting circle are flagged as on-band") {
  // z^4 - 1: all four roots on the unit circle.
  const RootResult r = poly_roots({-1.0, 0.0, 0.0, 0.0, 1.0});
  const ModulusCount mc = count_by_modulus(r.roots, 1.0, 1e-9);
  CHECK(mc.on == 4);
  CHECK(mc.inside == 0);
  CHECK(mc.outside == 0);

  // Same roots against a larger circle sit strictly inside.
  const ModulusCount mc2 = count_by_modulus(r.roots, 2.0, 1e-9);
  CHECK(mc2.inside == 4);
}

TEST_CASE("equal-modulus roots land in one tie group") {
  // z^3 - 8: roots 2, 2w, 2w^2 all on |z| = 2.
  const RootResult r = poly_roots({-8.0, 0.0, 0.0, 1.0});
  REQUIRE(r.roots.size() == 3);
  std::size_t grouped = 0;
  for (const auto& [lo, hi] : r.tie_groups) grouped = std::max(grouped, hi - lo);
  CHECK(grouped == 3);
}

TEST_CASE("large dynamic range stays accurate") {
  // (z - 1e-3)(z - 1e3) = z^2 - (1e3 + 1e-3) z + 1
  const RootResult r = poly_roots({1.0, -(1e3 + 1e-3), 1.0});
  REQUIRE(r.roots.size() == 2);
  CHECK(std::abs(r.roots[0] - cplx(1e-3)) < 1e-9);
  CHECK(std::abs(r.roots[1] - cplx(1e3)) < 1e-6);
}
