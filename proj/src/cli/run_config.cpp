#include <cmath>
#include <set>

#include "nematic/cli.hpp"

namespace nematic::cli {

namespace {

const std::set<std::string> kCommands = {"spectrum", "phase-diagram", "solve", "laplace-check", "mc"};

template <class T>
void read(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key \"") + key + "\": " + e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool increasing_positive(const std::vector<double>& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!(v[k] > 0.0) || !std::isfinite(v[k])) return false;
    if (k > 0 && !(v[k] > v[k - 1])) return false;
  }
  return true;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  return {{"command", command},
          {"potential", potential},
          {"quad_order", quad_order},
          {"tol", tol},
          {"damping", damping},
          {"max_iter", max_iter},
          {"beta", beta},
          {"beta_min", beta_min},
          {"beta_max", beta_max},
          {"beta_steps", beta_steps},
          {"scan_points", scan_points},
          {"seed_density", seed_density},
          {"seed", seed},
          {"jobs", jobs},
          {"out", out},
          {"n_particles", n_particles},
          {"n_sweeps", n_sweeps},
          {"n_burnin", n_burnin},
          {"chains", chains},
          {"laplace_betas", laplace_betas},
          {"cumulant_betas", cumulant_betas}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  const nlohmann::json known = c.to_json();
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config key \"" + key + "\"");
  read(j, "command", c.command);
  if (j.contains("potential")) c.potential = j.at("potential");
  read(j, "quad_order", c.quad_order);
  read(j, "tol", c.tol);
  read(j, "damping", c.damping);
  read(j, "max_iter", c.max_iter);
  read(j, "beta", c.beta);
  read(j, "beta_min", c.beta_min);
  read(j, "beta_max", c.beta_max);
  read(j, "beta_steps", c.beta_steps);
  read(j, "scan_points", c.scan_points);
  read(j, "seed_density", c.seed_density);
  read(j, "seed", c.seed);
  read(j, "jobs", c.jobs);
  read(j, "out", c.out);
  read(j, "n_particles", c.n_particles);
  read(j, "n_sweeps", c.n_sweeps);
  read(j, "n_burnin", c.n_burnin);
  read(j, "chains", c.chains);
  read(j, "laplace_betas", c.laplace_betas);
  read(j, "cumulant_betas", c.cumulant_betas);
  return c;
}

AxisymmetricPotential RunConfig::make_potential() const {
  try {
    return AxisymmetricPotential::from_json(potential);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
}

void RunConfig::validate() const {
  require(kCommands.count(command) == 1, "unknown command \"" + command + "\"");
  (void)make_potential();
  require(quad_order >= 2 && quad_order <= 4096, "quad_order must be in [2, 4096]");
  require(tol > 0.0 && std::isfinite(tol), "tol must be positive");
  require(damping > 0.0 && damping <= 1.0, "damping must be in (0, 1]");
  require(max_iter > 0, "max_iter must be positive");
  require(scan_points >= 100, "scan_points must be at least 100");
  if (command == "phase-diagram") {
    require(beta_min > 0.0 && std::isfinite(beta_max), "beta_min must be positive");
    require(beta_max > beta_min, "empty beta range: beta_max must exceed beta_min");
    require(beta_steps >= 2, "beta_steps must be at least 2");
  }
  if (command == "solve" || command == "mc")
    require(beta >= 0.0 && std::isfinite(beta), "beta must be finite and nonnegative");
  if (command == "solve") {
    require(beta > 0.0, "solve needs beta > 0");
    require(seed_density == "prolate" || seed_density == "uniform" || seed_density == "oblate",
            "seed_density must be prolate, uniform or oblate");
  }
  if (command == "mc") {
    require(n_particles >= 2, "n_particles must be at least 2");
    require(n_sweeps > n_burnin, "n_sweeps must exceed n_burnin");
    require(n_sweeps - n_burnin >= 2, "need at least two production sweeps");
    require(chains >= 1, "chains must be at least 1");
  }
  if (command == "laplace-check") {
    require(laplace_betas.size() >= 2 && increasing_positive(laplace_betas),
            "laplace_betas must be at least two increasing positive values");
    require(cumulant_betas.size() >= 3 && increasing_positive(cumulant_betas),
            "cumulant_betas must be at least three increasing positive values");
  }
}

std::optional<double> maier_saupe_coupling(const AxisymmetricPotential& potential) {
  const auto& c = potential.coefficients();
  if (c.size() != 2 || !c.count(0) || !c.count(2)) return std::nullopt;
  const double w = c.at(0);
  if (!(w > 0.0) || c.at(2) != -w) return std::nullopt;
  return w;
}

}  // namespace nematic::cli
