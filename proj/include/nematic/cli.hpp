#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nematic/potential.hpp"

namespace nematic::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInvariantViolation = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Serializes to JSON and back without loss, so
/// a saved config plus its seed reproduces the output exactly.
struct RunConfig {
  std::string command;
  nlohmann::json potential = {{"type", "maier-saupe"}, {"w", 1.0}};
  int quad_order = 64;
  double tol = 1e-10;
  double damping = 0.5;
  int max_iter = 20000;

  double beta = 10.0;
  double beta_min = 1.0;
  double beta_max = 20.0;
  int beta_steps = 400;
  int scan_points = 2000;
  std::string seed_density = "prolate";  // prolate | uniform | oblate

  std::uint64_t seed = 1;
  unsigned jobs = 0;  // 0: all available cores
  std::string out;    // empty: stdout

  std::size_t n_particles = 256;
  std::size_t n_sweeps = 200000;
  std::size_t n_burnin = 20000;
  std::size_t chains = 1;

  std::vector<double> laplace_betas = {25.0, 100.0, 400.0};
  std::vector<double> cumulant_betas = {50.0, 100.0, 200.0, 400.0};

  [[nodiscard]] nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& j);

  /// Throws ConfigError on the first inconsistent field.
  void validate() const;
  [[nodiscard]] AxisymmetricPotential make_potential() const;
};

/// w when the potential is w (1 - P_2), i.e. coefficients {0: w, 2: -w}.
std::optional<double> maier_saupe_coupling(const AxisymmetricPotential& potential);

/// Each command writes its result to `out` (or to files under config.out) and
/// returns an ExitCode. Config problems are thrown as ConfigError.
int cmd_spectrum(const RunConfig& config, std::ostream& out);
int cmd_phase_diagram(const RunConfig& config, std::ostream& out);
int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_laplace_check(const RunConfig& config, std::ostream& out);
int cmd_mc(const RunConfig& config, std::ostream& out);

/// Runs config.command.
int dispatch(const RunConfig& config, std::ostream& out);

/// Full command-line entry point: parses flags, merges --config, honours
/// --emit-config, dispatches and maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nematic::cli
