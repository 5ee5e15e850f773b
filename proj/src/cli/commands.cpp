#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nematic/cli.hpp"
#include "nematic/continuation.hpp"
#include "nematic/laplace.hpp"
#include "nematic/mc.hpp"
#include "nematic/sce.hpp"
#include "nematic/spectrum.hpp"

namespace nematic::cli {

namespace {

constexpr double kResidualBound = 1e-9;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open \"" + path + "\" for writing");
  f << text;
  if (!f) throw ConfigError("write to \"" + path + "\" failed");
}

void emit(const RunConfig& config, const nlohmann::json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (config.out.empty())
    out << text;
  else
    write_file(config.out, text);
}

double require_maier_saupe(const RunConfig& config) {
  const auto w = maier_saupe_coupling(config.make_potential());
  if (!w) throw ConfigError(config.command + " needs a Maier-Saupe potential w (1 - P_2)");
  return *w;
}

QuadratureRule config_rule(const RunConfig& config) {
  return gauss_rule(static_cast<std::size_t>(config.quad_order));
}

/// int_0^{pi/2} e^{-beta f} sin(theta) dtheta on the rule used by the Laplace checks.
double numeric_partition(const AngularFunction& f, double beta) {
  const QuadratureRule rule = laplace_rule();
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) {
    const double theta = 0.5 * kPi * rule.nodes[i];
    acc += rule.weights[i] * std::exp(-beta * f(theta)) * std::sin(theta);
  }
  return 0.5 * kPi * acc;
}

}  // namespace

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  config.validate();
  const auto potential = config.make_potential();
  const SpectrumReport report = analyze_spectrum(potential, config_rule(config));
  nlohmann::json j = report.to_json();
  j["potential"] = config.potential;
  emit(config, j, out);
  return kOk;
}

int cmd_phase_diagram(const RunConfig& config, std::ostream& out) {
  config.validate();
  const ScalarReduction model(require_maier_saupe(config));
  TraceOptions options;
  options.scan.scan_points = config.scan_points;
  options.jobs = config.jobs;
  const PhaseDiagram diagram =
      trace_branches(model, config.beta_min, config.beta_max, config.beta_steps, options);

  const std::string csv = diagram.to_csv();
  const nlohmann::json events = diagram.events_json();
  if (config.out.empty()) {
    out << csv << "\n" << events.dump(2) << "\n";
  } else {
    write_file(config.out + ".csv", csv);
    write_file(config.out + ".events.json", events.dump(2) + "\n");
  }
  for (const auto& line : diagram.log) std::cerr << "phase-diagram: " << line << "\n";

  bool ok = diagram.max_residual() <= kResidualBound;
  for (const auto& b : diagram.branches)
    if (b.kind == BranchKind::isotropic)
      for (const auto& p : b.points) ok = ok && p.xi == ScalarReduction::kIsotropicXi;
  for (const auto& e : diagram.events)
    if (e.kind == EventKind::transcritical)
      ok = ok && std::abs(e.xi - ScalarReduction::kIsotropicXi) <= 1e-6;
  if (!ok) {
    std::cerr << "phase-diagram: branch invariant violated (max |G| = " << diagram.max_residual()
              << ")\n";
    return kInvariantViolation;
  }
  return kOk;
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
  config.validate();
  const auto potential = config.make_potential();
  const QuadratureRule rule = config_rule(config);
  OrientationDensity seed = OrientationDensity::uniform(rule);
  if (config.seed_density == "prolate")
    seed = OrientationDensity::prolate(rule);
  else if (config.seed_density == "oblate")
    seed = OrientationDensity::from_profile(rule, [](double u) { return std::exp(-5.0 * u * u); });

  PicardOptions options;
  options.damping = config.damping;
  options.tol = config.tol;
  options.max_iter = config.max_iter;
  const FixedPointResult r = solve_density(config.beta, potential, seed, options);

  nlohmann::json j{{"beta", config.beta},
                   {"potential", config.potential},
                   {"seed_density", config.seed_density},
                   {"converged", r.converged},
                   {"residual", r.residual},
                   {"iterations", r.iterations},
                   {"order_parameter", r.order_parameter},
                   {"nodes", r.density.rule().nodes},
                   {"density", r.density.values()}};
  emit(config, j, out);
  if (!r.converged) {
    std::cerr << "solve: Picard iteration did not reach tol " << config.tol << " (residual "
              << r.residual << ")\n";
    return kInvariantViolation;
  }
  return kOk;
}

int cmd_laplace_check(const RunConfig& config, std::ostream& out) {
  config.validate();
  const double w = require_maier_saupe(config);
  const AngularFunction f = [w](double t) { return 1.5 * w * std::sin(t) * std::sin(t); };
  const AngularFunction sin1 = [](double t) { return std::sin(t); };
  const AngularFunction sin2 = [](double t) { return std::sin(t) * std::sin(t); };
  const AngularFunction cos1 = [](double t) { return std::cos(t); };

  const LocalData data = local_data(f, sin1);
  const double beta_p = 100.0;
  const double expansion = laplace_partition(data, beta_p);
  const double numeric = numeric_partition(f, beta_p);
  const double rel = std::abs(expansion - numeric) / numeric;
  nlohmann::json partition{{"beta", beta_p},
                           {"expansion", expansion},
                           {"numeric", numeric},
                           {"relative_error", rel},
                           {"pass", rel <= 0.02}};

  const RateDiagnostics rate = laplace_rate_check(f, sin1, config.laplace_betas);
  const CumulantDiagnostics flat = cumulant_decay_check(cos1, cos1, f, config.cumulant_betas);
  const CumulantDiagnostics mixed = cumulant_decay_check(sin1, sin2, f, config.cumulant_betas);

  nlohmann::json j{{"w", w},
                   {"partition", partition},
                   {"expectation_rate", rate.to_json()},
                   {"cumulant_cos_cos", flat.to_json()},
                   {"cumulant_sin_sin2", mixed.to_json()}};
  const bool pass = partition["pass"].get<bool>() && rate.pass && flat.pass && mixed.pass;
  j["pass"] = pass;
  emit(config, j, out);
  return pass ? kOk : kInvariantViolation;
}

int cmd_mc(const RunConfig& config, std::ostream& out) {
  config.validate();
  const auto potential = config.make_potential();
  McOptions options;
  options.n_sweeps = config.n_sweeps;
  options.n_burnin = config.n_burnin;
  options.seed = config.seed;
  const auto chains =
      run_chains(config.n_particles, config.beta, potential, options, config.chains, config.jobs);
  const McEstimate merged = merge_estimates(chains);
  nlohmann::json j = merged.to_json();
  j["seed"] = config.seed;
  j["chains"] = config.chains;
  j["n_sweeps"] = config.n_sweeps;
  j["n_burnin"] = config.n_burnin;
  emit(config, j, out);
  for (const auto& w : merged.warnings) std::cerr << "mc: warning: " << w << "\n";
  return kOk;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  if (config.command == "spectrum") return cmd_spectrum(config, out);
  if (config.command == "phase-diagram") return cmd_phase_diagram(config, out);
  if (config.command == "solve") return cmd_solve(config, out);
  if (config.command == "laplace-check") return cmd_laplace_check(config, out);
  if (config.command == "mc") return cmd_mc(config, out);
  throw ConfigError("unknown command \"" + config.command + "\"");
}

namespace {

nlohmann::json parse_coeffs(const std::string& text) {
  nlohmann::json coeffs = nlohmann::json::object();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
      throw ConfigError("--coeffs expects l:c pairs separated by commas, got \"" + item + "\"");
    const std::string key = item.substr(0, colon);
    std::size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(item.substr(colon + 1), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() - colon - 1) throw ConfigError("--coeffs: bad coefficient in \"" + item + "\"");
    coeffs[key] = value;
  }
  if (coeffs.empty()) throw ConfigError("--coeffs is empty");
  return coeffs;
}

struct Flags {
  std::string config_path;
  std::string emit_path;
  std::string potential;
  double w = 1.0;
  std::string coeffs;
  RunConfig values;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config_path, "JSON run config; explicit flags override it");
  sub.add_option("--emit-config", f.emit_path, "write the resolved run config to this path");
  sub.add_option("--potential", f.potential, "maier-saupe | legendre");
  sub.add_option("--w", f.w, "Maier-Saupe coupling");
  sub.add_option("--coeffs", f.coeffs, "Legendre coefficients, e.g. 0:1,2:-1");
  sub.add_option("--quad-order", f.values.quad_order, "Gauss-Legendre order (default 64)");
  sub.add_option("--tol", f.values.tol, "fixed-point tolerance (default 1e-10)");
  sub.add_option("--damping", f.values.damping, "Picard damping (default 0.5)");
  sub.add_option("--max-iter", f.values.max_iter, "Picard iteration cap");
  sub.add_option("--beta", f.values.beta, "inverse temperature");
  sub.add_option("--beta-min", f.values.beta_min);
  sub.add_option("--beta-max", f.values.beta_max);
  sub.add_option("--beta-steps", f.values.beta_steps);
  sub.add_option("--scan-points", f.values.scan_points, "xi grid of the root scan");
  sub.add_option("--seed-density", f.values.seed_density, "prolate | uniform | oblate");
  sub.add_option("--seed", f.values.seed);
  sub.add_option("--jobs", f.values.jobs, "worker threads (default: all cores)");
  sub.add_option("--out", f.values.out, "output path (phase-diagram: file prefix)");
  sub.add_option("--n-particles", f.values.n_particles);
  sub.add_option("--sweeps", f.values.n_sweeps);
  sub.add_option("--burnin", f.values.n_burnin);
  sub.add_option("--chains", f.values.chains);
}

bool given(const CLI::App& sub, const std::string& name) { return sub.count(name) > 0; }

RunConfig resolve(const CLI::App& sub, const Flags& f) {
  RunConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot read config \"" + f.config_path + "\"");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config \"" + f.config_path + "\": " + e.what());
    }
    c = RunConfig::from_json(j);
  }
  c.command = sub.get_name();

  const RunConfig& v = f.values;
  if (given(sub, "--quad-order")) c.quad_order = v.quad_order;
  if (given(sub, "--tol")) c.tol = v.tol;
  if (given(sub, "--damping")) c.damping = v.damping;
  if (given(sub, "--max-iter")) c.max_iter = v.max_iter;
  if (given(sub, "--beta")) c.beta = v.beta;
  if (given(sub, "--beta-min")) c.beta_min = v.beta_min;
  if (given(sub, "--beta-max")) c.beta_max = v.beta_max;
  if (given(sub, "--beta-steps")) c.beta_steps = v.beta_steps;
  if (given(sub, "--scan-points")) c.scan_points = v.scan_points;
  if (given(sub, "--seed-density")) c.seed_density = v.seed_density;
  if (given(sub, "--seed")) c.seed = v.seed;
  if (given(sub, "--jobs")) c.jobs = v.jobs;
  if (given(sub, "--out")) c.out = v.out;
  if (given(sub, "--n-particles")) c.n_particles = v.n_particles;
  if (given(sub, "--sweeps")) c.n_sweeps = v.n_sweeps;
  if (given(sub, "--burnin")) c.n_burnin = v.n_burnin;
  if (given(sub, "--chains")) c.chains = v.chains;

  std::string type = given(sub, "--potential") ? f.potential : "";
  if (type.empty() && given(sub, "--coeffs")) type = "legendre";
  if (type.empty() && given(sub, "--w")) type = "maier-saupe";
  if (type == "maier-saupe") {
    if (given(sub, "--coeffs")) throw ConfigError("--coeffs does not apply to maier-saupe");
    double w = f.w;
    if (!given(sub, "--w") && c.potential.is_object() && c.potential.value("type", "") == "maier-saupe" &&
        c.potential.contains("w"))
      w = c.potential.at("w").get<double>();
    c.potential = {{"type", "maier-saupe"}, {"w", w}};
  } else if (type == "legendre") {
    if (!given(sub, "--coeffs")) throw ConfigError("--potential legendre needs --coeffs");
    if (given(sub, "--w")) throw ConfigError("--w does not apply to legendre");
    c.potential = {{"type", "legendre"}, {"coeffs", parse_coeffs(f.coeffs)}};
  } else if (!type.empty()) {
    throw ConfigError("unknown potential \"" + type + "\"");
  }
  return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-field nematic solver"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "eigenvalues of the linearized map and bifurcation temperatures"},
      {"phase-diagram", "branches xi(beta) and bifurcation events (Maier-Saupe)"},
      {"solve", "damped Picard solve for the orientation density at one beta"},
      {"laplace-check", "low-temperature expansion diagnostics"},
      {"mc", "Metropolis estimate of the order parameter for N rods"}};
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const RunConfig config = resolve(*sub, flags);
    config.validate();
    if (!flags.emit_path.empty()) write_file(flags.emit_path, config.to_json().dump(2) + "\n");
    return dispatch(config, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalDomainError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvariantViolation;
  }
}

}  // namespace nematic::cli
