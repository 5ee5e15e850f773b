#include <doctest.h>

#include <cmath>

#include "nematic/continuation.hpp"
#include "oracles/oracles.hpp"

using namespace nematic;

namespace {

const PhaseDiagram& diagram_w1() {
  static const PhaseDiagram d = trace_branches(ScalarReduction(1.0), 1.0, 20.0, 191);
  return d;
}

std::vector<BifurcationEvent> events_of(const PhaseDiagram& d, EventKind kind) {
  std::vector<BifurcationEvent> out;
  for (const auto& e : d.events)
    if (e.kind == kind) out.push_back(e);
  return out;
}

/// Stable prolate root by bisection on the oracle map.
double oracle_xi1(double beta) {
  double lo = 0.0;
  double hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid - oracle::scalar_F(beta, 1.0, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("branch invariants") {
  const ScalarReduction model(1.0);
  const auto& d = diagram_w1();
  CHECK(d.max_residual() <= 1e-9);
  for (const auto& b : d.branches)
    for (const auto& p : b.points) {
      CHECK(std::abs(model.G(p.beta, p.xi)) <= 1e-9);
      CHECK(p.stable == (p.dF_dxi < 1.0));
      if (b.kind == BranchKind::isotropic) CHECK(p.xi == 2.0 / 3.0);
      if (b.kind == BranchKind::nematic_lower) CHECK(p.xi < 2.0 / 3.0);
    }
  REQUIRE(d.branches.size() == 3);
  CHECK(d.branches[0].kind == BranchKind::isotropic);
}

TEST_CASE("transcritical event at 5/w with exchange of stability") {
  const auto tc = events_of(diagram_w1(), EventKind::transcritical);
  REQUIRE(tc.size() == 1);
  CHECK(std::abs(tc[0].beta - 5.0) <= 1e-3);
  CHECK(std::abs(tc[0].xi - 2.0 / 3.0) <= 1e-6);
  CHECK(tc[0].exchange_of_stability);
  CHECK(tc[0].refinement_error <= 1e-6);

  const auto d2 = trace_branches(ScalarReduction(2.0), 0.5, 10.0, 120);
  const auto tc2 = events_of(d2, EventKind::transcritical);
  REQUIRE(tc2.size() == 1);
  CHECK(std::abs(tc2[0].beta - 2.5) <= 1e-3);
}

TEST_CASE("exactly one saddle-node, located where the brute-force root count jumps") {
  const auto sn = events_of(diagram_w1(), EventKind::saddle_node);
  REQUIRE(sn.size() == 1);
  CHECK(sn[0].beta > 1.0 / 3.0);
  CHECK(sn[0].beta < 5.0);
  const double ref = oracle::brute_fold_beta(1.0, 4.0, 4.9, 1e-5);
  CHECK(std::abs(sn[0].beta - ref) <= 1e-4);
}

TEST_CASE("below the uniqueness bound only the isotropic branch exists") {
  const auto d = trace_branches(ScalarReduction(1.0), 0.1, 0.3, 21);
  REQUIRE(d.branches.size() == 1);
  CHECK(d.branches[0].kind == BranchKind::isotropic);
  CHECK(d.events.empty());
}

TEST_CASE("output does not depend on the number of workers") {
  TraceOptions one;
  one.jobs = 1;
  TraceOptions three;
  three.jobs = 3;
  const ScalarReduction model(1.0);
  const auto a = trace_branches(model, 3.0, 8.0, 41, one);
  const auto b = trace_branches(model, 3.0, 8.0, 41, three);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.events_json() == b.events_json());
}

TEST_CASE("csv layout") {
  const std::string csv = diagram_w1().to_csv();
  CHECK(csv.rfind("beta,xi,dF_dxi,stable,residual,branch_kind\n", 0) == 0);
  CHECK(csv.find(",isotropic\n") != std::string::npos);
  CHECK(csv.find(",nematic-lower\n") != std::string::npos);
  CHECK(csv.find(",nematic-upper\n") != std::string::npos);
  // 17 significant digits survive a round trip
  const auto line_start = csv.find('\n') + 1;
  const double beta = std::stod(csv.substr(line_start, csv.find(',', line_start) - line_start));
  CHECK(beta == 1.0);
  const auto j = diagram_w1().events_json();
  REQUIRE(j.is_array());
  CHECK(j[0].contains("refinement_error"));
}

TEST_CASE("argument checks") {
  const ScalarReduction model(1.0);
  CHECK_THROWS_AS(trace_branches(model, 0.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(trace_branches(model, 2.0, 2.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(trace_branches(model, 2.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(low_temperature_branch(model, 5.0, 100.0, 10), std::invalid_argument);
}

TEST_CASE("low-temperature branch") {
  const ScalarReduction model(1.0);
  const Branch to100 = low_temperature_branch(model, 10.0, 100.0, 12);
  const double xi100 = to100.points.back().xi;
  CHECK(to100.points.back().beta == 100.0);
  CHECK(std::abs(100.0 * xi100 - 2.0 / 3.0) <= 0.05);
  const Branch far = low_temperature_branch(model, 100.0, 1e4, 25);
  CHECK(far.points.back().xi <= 1e-3);
  for (std::size_t k = 1; k < far.points.size(); ++k) CHECK(far.points[k].xi < far.points[k - 1].xi);

  const Branch doubling = low_temperature_branch(model, 10.0, 80.0, 4);
  const double want[] = {10.0, 20.0, 40.0, 80.0};
  for (int k = 0; k < 4; ++k) {
    CHECK(doubling.points[k].beta == doctest::Approx(want[k]).epsilon(1e-14));
    CHECK(std::abs(doubling.points[k].xi - oracle_xi1(doubling.points[k].beta)) <= 1e-12);
    if (k > 0) CHECK(doubling.points[k].xi < doubling.points[k - 1].xi);
  }
}
