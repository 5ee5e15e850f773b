#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nematic/sce.hpp"

namespace nematic {

enum class BranchKind { isotropic, nematic_lower, nematic_upper };

std::string to_string(BranchKind kind);

struct BranchPoint {
  double beta;
  double xi;
  double dF_dxi;
  bool stable;
  double residual;
};

/// One connected family of scalar roots over the beta grid.
///
/// The nematic pair born in the fold is split into the stable member
/// (nematic-lower, xi_1 < 2/3) and the unstable member (nematic-upper, xi_2),
/// which climbs through 2/3 at the transcritical point.
struct Branch {
  BranchKind kind;
  std::vector<BranchPoint> points;
};

enum class EventKind { saddle_node, transcritical };

std::string to_string(EventKind kind);

struct BifurcationEvent {
  EventKind kind;
  double beta;
  double xi;
  double refinement_error;  // final bracket width in beta
  /// Transcritical only: dF/dxi(beta, 2/3) is below 1 on one side of the
  /// bracket and above 1 on the other.
  bool exchange_of_stability = false;

  [[nodiscard]] nlohmann::json to_json() const;
};

struct TraceOptions {
  ScanOptions scan{};
  double refine_width = 1e-6;
  unsigned jobs = 0;  // 0: std::thread::hardware_concurrency()
};

struct PhaseDiagram {
  std::vector<Branch> branches;
  std::vector<BifurcationEvent> events;
  std::vector<std::string> log;  // linking ambiguities and unclassified count changes

  /// Largest |G| over all branch points.
  [[nodiscard]] double max_residual() const;

  /// beta,xi,dF_dxi,stable,residual,branch_kind with 17 significant digits.
  [[nodiscard]] std::string to_csv() const;
  [[nodiscard]] nlohmann::json events_json() const;
};

/// Scans a uniform beta grid, links the roots of each grid point into branches
/// and locates folds (root count changes) and transcritical crossings of 2/3,
/// both refined by bisection in beta down to `refine_width`.
PhaseDiagram trace_branches(const ScalarReduction& model, double beta_min, double beta_max,
                            int beta_steps, const TraceOptions& options = {});

/// Follows the stable nematic root from beta_start to beta_end on a geometric
/// grid, warm-starting each solve from the previous root. Throws
/// std::runtime_error if the root is lost or xi fails to decrease.
Branch low_temperature_branch(const ScalarReduction& model, double beta_start, double beta_end,
                              int steps);

}  // namespace nematic
