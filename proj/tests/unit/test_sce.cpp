#include <doctest.h>

#include <cmath>
#include <random>

#include "nematic/sce.hpp"
#include "oracles/oracles.hpp"

using namespace nematic;

namespace {

const QuadratureRule& rule64() {
  static const QuadratureRule r = gauss_rule(64);
  return r;
}

OrientationDensity prolate_with_p2(double target) {
  double lo = 0.0;
  double hi = 400.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (OrientationDensity::prolate(rule64(), mid).legendre_moment(2) < target ? lo : hi) = mid;
  }
  return OrientationDensity::prolate(rule64(), 0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("order parameter of reference densities") {
  CHECK(order_parameter(OrientationDensity::uniform(rule64())) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  const QuadratureRule big = gauss_rule(512);
  CHECK(order_parameter(OrientationDensity::point_mass(big, big.order() - 1)) < 1e-4);
  CHECK(order_parameter(OrientationDensity::point_mass(big, 0)) > 1.0 - 1e-4);
}

TEST_CASE("uniform density is a fixed point of the map") {
  const auto iso = OrientationDensity::uniform(rule64());
  for (double beta : {0.1, 1.0, 5.0, 10.0, 500.0}) {
    CHECK(sce_map(beta, AxisymmetricPotential::maier_saupe(1.0), iso).sup_distance(iso) <= 1e-12);
    const AxisymmetricPotential mixed({{0, 2.0}, {2, -1.0}, {4, 0.5}, {6, -0.2}}, "mixed");
    CHECK(sce_map(beta, mixed, iso).sup_distance(iso) <= 1e-12);
  }
}

TEST_CASE("map output stays on the simplex") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const auto u = AxisymmetricPotential::maier_saupe(1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(rule64().order());
    for (double& x : v) x = std::pow(d(rng), 4.0);
    const double beta = 500.0 * d(rng);
    const auto out = sce_map(beta, u, OrientationDensity::normalized(rule64(), v));
    for (double x : out.values()) CHECK(x >= 0.0);
    CHECK(std::abs(out.mass() - 1.0) <= 1e-12);
  }
  // no overflow at large beta
  const auto sharp = sce_map(500.0, u, prolate_with_p2(0.9));
  CHECK(std::isfinite(order_parameter(sharp)));
}

TEST_CASE("high temperature: the map approaches uniform linearly in beta") {
  const auto u = AxisymmetricPotential::maier_saupe(1.0);
  const auto iso = OrientationDensity::uniform(rule64());
  const auto nu = prolate_with_p2(0.9);
  // first-order expansion: |nu' - 1/(2pi)| <= beta * sup|H - <H>| / (2pi) <= beta * 1.5 / (2 pi)
  const double c = 1.5 / kTwoPi;
  for (double beta : {1e-3, 1e-4, 1e-5}) CHECK(sce_map(beta, u, nu).sup_distance(iso) <= c * beta);
}

TEST_CASE("one map step matches the scalar map") {
  const auto u = AxisymmetricPotential::maier_saupe(1.0);
  const auto nu = prolate_with_p2(0.8);
  const double xi_in = order_parameter(nu);
  CHECK(xi_in == doctest::Approx((2.0 / 3.0) * 0.2).epsilon(1e-10));
  const double xi_out = order_parameter(sce_map(10.0, u, nu));
  CHECK(xi_out == doctest::Approx(oracle::scalar_F(10.0, 1.0, xi_in)).epsilon(1e-12));
}

TEST_CASE("Picard solves") {
  const auto u = AxisymmetricPotential::maier_saupe(1.0);
  const auto iso = OrientationDensity::uniform(rule64());

  const auto r3 = solve_density(3.0, u, iso);
  CHECK(r3.converged);
  CHECK(r3.residual < 1e-12);
  CHECK(r3.order_parameter == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  PicardOptions undamped;
  undamped.damping = 1.0;
  const auto r10u = solve_density(10.0, u, iso, undamped);
  CHECK(r10u.converged);
  CHECK(r10u.order_parameter == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  const auto r10 = solve_density(10.0, u, OrientationDensity::prolate(rule64()));
  CHECK(r10.converged);
  CHECK(r10.order_parameter < 2.0 / 3.0);
  const ScalarReduction model(1.0);
  const auto roots = model.nematic_roots(10.0);
  REQUIRE(!roots.empty());
  CHECK(std::abs(r10.order_parameter - roots.front().xi) <= 1e-8);
}

TEST_CASE("Picard reports non-convergence instead of throwing") {
  PicardOptions few;
  few.max_iter = 2;
  const auto r = solve_density(10.0, AxisymmetricPotential::maier_saupe(1.0),
                               OrientationDensity::prolate(rule64()), few);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
  PicardOptions bad;
  bad.damping = 1.5;
  CHECK_THROWS_AS(solve_density(1.0, AxisymmetricPotential::maier_saupe(1.0),
                                OrientationDensity::uniform(rule64()), bad),
                  std::invalid_argument);
}

TEST_CASE("scalar map against the closed-form oracle") {
  const ScalarReduction model(1.0);
  for (double beta : {0.5, 3.0, 10.0, 100.0, 1000.0, 1e4})
    for (double xi : {0.0, 0.01, 0.2, 0.5, 2.0 / 3.0, 0.8, 1.0}) {
      const double want = oracle::scalar_F(beta, 1.0, xi);
      CHECK(std::abs(model.F(beta, xi) - want) <= 1e-12 * std::max(1.0, want) + 1e-15);
    }
  const ScalarReduction w2(2.0);
  CHECK(w2.F(5.0, 0.3) == doctest::Approx(model.F(10.0, 0.3)).epsilon(1e-14));
}

TEST_CASE("scalar map basics") {
  const ScalarReduction model(1.0);
  for (double beta : {0.1, 5.0, 50.0})
    CHECK(model.F(beta, 2.0 / 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  for (double xi : {0.0, 0.4, 1.0}) CHECK(model.F(1e-9, xi) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  for (double beta : {0.1, 1.0, 10.0, 100.0, 500.0})
    for (double xi : {0.0, 0.3, 0.9, 1.0}) {
      const double f = model.F(beta, xi);
      CHECK(f > 0.0);
      CHECK(f < 1.0);
    }
  // Laplace leading term 2/(3 beta) at xi = 0
  CHECK(model.F(100.0, 0.0) == doctest::Approx(1.0 / 150.0).epsilon(0.02));
  CHECK(std::abs(model.F(200.0, 0.0) / (2.0 / 600.0) - 1.0) <= 0.10);
  CHECK(std::abs(model.F(1000.0, 0.0) / (2.0 / 3000.0) - 1.0) <= 0.03);
}

TEST_CASE("dF/dxi matches a finite difference of F") {
  const ScalarReduction model(1.0);
  for (double beta : {2.0, 5.0, 10.0, 50.0})
    for (double xi : {0.05, 0.3, 2.0 / 3.0, 0.9}) {
      const double h = 1e-5;
      const double fd = (model.F(beta, xi + h) - model.F(beta, xi - h)) / (2 * h);
      CHECK(model.dF_dxi(beta, xi) == doctest::Approx(fd).epsilon(1e-7));
    }
  // at the isotropic point dF/dxi = beta w / 5
  CHECK(model.dF_dxi(5.0, 2.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.dF_dxi(1.0, 2.0 / 3.0) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("scalar root sets") {
  const ScalarReduction model(1.0);
  const auto one = model.solve(1.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].xi == 2.0 / 3.0);
  CHECK(one[0].stable);
  CHECK(oracle::brute_root_count(1.0, 1.0) == 1);

  const auto ten = model.solve(10.0);
  REQUIRE(ten.size() == 3);
  CHECK(oracle::brute_root_count(10.0, 1.0) == 3);
  CHECK(ten[0].xi < 2.0 / 3.0);
  CHECK(ten[0].stable);
  CHECK(ten[1].xi == 2.0 / 3.0);
  CHECK_FALSE(ten[1].stable);
  CHECK(ten[2].xi > 2.0 / 3.0);
  CHECK(ten[2].oblate);
  for (const auto& r : ten) CHECK(r.residual <= 1e-12);
  // the oracle agrees on the nematic root location
  const double x = ten[0].xi;
  CHECK(std::abs(x - oracle::scalar_F(10.0, 1.0, x)) <= 1e-13);

  const auto at_star = model.classify(5.0, 2.0 / 3.0);
  CHECK(at_star.dF_dxi == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("scan options are validated") {
  const ScalarReduction model(1.0);
  ScanOptions coarse;
  coarse.scan_points = 10;
  CHECK_THROWS_AS(static_cast<void>(model.solve(1.0, coarse)), std::invalid_argument);
  CHECK_THROWS_AS(ScalarReduction(0.0), std::invalid_argument);
}

TEST_CASE("density for an order parameter reproduces it under the map") {
  const ScalarReduction model(1.0);
  const auto roots = model.nematic_roots(20.0);
  REQUIRE(!roots.empty());
  const auto nu = density_for_order_parameter(rule64(), 20.0, 1.0, roots.front().xi);
  CHECK(order_parameter(nu) == doctest::Approx(roots.front().xi).epsilon(1e-10));
}
