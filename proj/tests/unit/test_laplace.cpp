#include <doctest.h>

#include <cmath>

#include "nematic/laplace.hpp"
#include "nematic/sce.hpp"
#include "oracles/oracles.hpp"

using namespace nematic;

namespace {

double ms(double t) { return 1.5 * std::sin(t) * std::sin(t); }
double sin1(double t) { return std::sin(t); }
double sin2(double t) { return std::sin(t) * std::sin(t); }
double cos1(double t) { return std::cos(t); }
double one(double) { return 1.0; }

}  // namespace

TEST_CASE("local data of the Maier-Saupe exponent") {
  const LocalData d = local_data(ms, sin2);
  CHECK(d.f0 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d.f2 == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(std::abs(d.f3) <= 1e-6);
  CHECK(std::abs(d.g1) <= 1e-8);
  CHECK(d.g2 == doctest::Approx(2.0).epsilon(1e-7));
  const LocalData cubic = local_data([](double t) { return 1.5 * std::sin(t) * std::sin(t) + t * t * t; }, sin1);
  CHECK(cubic.f3 == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(cubic.g1 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("partition expansion") {
  const LocalData d{0.0, 3.0, 0.0, 0.0, 0.0, 0.0};
  for (double beta : {10.0, 100.0, 1e3}) CHECK(laplace_partition(d, beta) == doctest::Approx(1.0 / (3.0 * beta)));
  const double z = oracle::tilted_partition(ms, 100.0);
  CHECK(std::abs(laplace_partition(local_data(ms, one), 100.0) / z - 1.0) <= 0.02);
  const LocalData flat{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(laplace_partition(flat, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(laplace_partition(d, 0.0), std::invalid_argument);
}

TEST_CASE("expectation expansion special cases") {
  const LocalData d1 = local_data(ms, one);
  for (double beta : {1.0, 50.0, 1e4}) CHECK(laplace_expectation(d1, beta) == doctest::Approx(1.0).epsilon(1e-12));
  const LocalData d2 = local_data(ms, sin2);
  for (double beta : {10.0, 100.0, 1e3})
    CHECK(laplace_expectation(d2, beta) == doctest::Approx(2.0 / (3.0 * beta)).epsilon(1e-6));
}

TEST_CASE("tilted expectations against the 256-point oracle") {
  for (double beta : {25.0, 100.0, 400.0}) {
    CHECK(tilted_expectation(ms, sin1, beta) == doctest::Approx(oracle::tilted_mean(ms, sin1, beta)).epsilon(1e-12));
    CHECK(tilted_expectation(ms, sin2, beta) == doctest::Approx(oracle::tilted_mean(ms, sin2, beta)).epsilon(1e-12));
  }
}

TEST_CASE("truncation error decays as beta^-3/2 when f3 = 0") {
  const auto r = laplace_rate_check(ms, sin1, {25.0, 100.0, 400.0});
  CHECK(r.pass);
  for (double q : r.ratios) {
    CHECK(q >= 6.0);
    CHECK(q <= 10.0);
  }
  // g1 != 0, f3 = 0: error shrinks by >= 6 from beta 100 to 400
  const double e100 = std::abs(oracle::tilted_mean(ms, sin1, 100.0) - laplace_expectation(local_data(ms, sin1), 100.0));
  const double e400 = std::abs(oracle::tilted_mean(ms, sin1, 400.0) - laplace_expectation(local_data(ms, sin1), 400.0));
  CHECK(e100 / e400 >= 6.0);
}

TEST_CASE("the f''' term of the beta^-1 coefficient is exercised") {
  // with the (3 pi - 16)/12 g1 f3 / f2^2 term the error is o(1/beta): ratios grow past 4
  const AngularFunction f = [](double t) { return 1.5 * std::sin(t) * std::sin(t) + t * t * t; };
  const auto r = laplace_rate_check(f, sin1, {100.0, 400.0, 1600.0, 6400.0}, 4.5, 10.0);
  CHECK(r.pass);
  // dropping it leaves a 1/beta error: ratio near 4
  LocalData d = local_data(f, sin1);
  const double beta1 = 1600.0;
  const double beta2 = 6400.0;
  auto without = [&](double beta) {
    const double full = laplace_expectation(d, beta);
    return full - (3.0 * kPi - 16.0) / 12.0 * d.g1 * d.f3 / (d.f2 * d.f2) / beta;
  };
  const double q = std::abs(tilted_expectation(f, sin1, beta1) - without(beta1)) /
                   std::abs(tilted_expectation(f, sin1, beta2) - without(beta2));
  CHECK(q == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("scaled covariances") {
  const auto flat = cumulant_decay_check(cos1, cos1, ms, {50.0, 100.0, 200.0, 400.0});
  CHECK(flat.h_flat);
  CHECK(flat.pass_one);
  CHECK(flat.pass);
  const auto mixed = cumulant_decay_check(sin1, sin2, ms, {50.0, 100.0, 200.0, 400.0});
  CHECK(mixed.h_flat);
  CHECK(mixed.pass_one);
  const auto both = cumulant_decay_check(sin1, sin1, ms, {50.0, 100.0, 200.0, 400.0});
  CHECK_FALSE(both.h_flat);
  CHECK(both.pass_half);
  CHECK(both.pass);
  CHECK_THROWS_AS(cumulant_decay_check(cos1, cos1, ms, {100.0, 50.0, 200.0}), std::invalid_argument);
  CHECK_THROWS_AS(cumulant_decay_check(cos1, cos1, ms, {50.0, 100.0}), std::invalid_argument);
}

TEST_CASE("expansion agrees with the scalar map at xi = 0") {
  const ScalarReduction model(1.0);
  const LocalData d = local_data(ms, sin2);
  CHECK(std::abs(model.F(200.0, 0.0) / laplace_expectation(d, 200.0) - 1.0) <= 0.10);
  CHECK(std::abs(model.F(1000.0, 0.0) / laplace_expectation(d, 1000.0) - 1.0) <= 0.03);
}
