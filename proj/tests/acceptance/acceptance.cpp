// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance        run all criteria
//   acceptance 4      run criterion 4 only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nematic/cli.hpp"
#include "nematic/continuation.hpp"
#include "nematic/laplace.hpp"
#include "nematic/mc.hpp"
#include "nematic/sce.hpp"
#include "nematic/spectrum.hpp"
#include "nematic/thermo.hpp"
#include "oracles/oracles.hpp"

using namespace nematic;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int run_cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "nematic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o;
  std::ostringstream e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  return code;
}

double ms(double t) { return 1.5 * std::sin(t) * std::sin(t); }

const AxisymmetricPotential& ms1() {
  static const AxisymmetricPotential u = AxisymmetricPotential::maier_saupe(1.0);
  return u;
}

Outcome c1() {
  Outcome r;
  for (double w : {0.5, 1.0, 2.0}) {
    std::string out;
    const int code = run_cli({"spectrum", "--w", fmt("%.17g", w)}, out);
    const auto j = nlohmann::json::parse(out);
    const double beta = j["bifurcation_betas"]["2"].get<double>();
    r.require(code == 0 && beta == 5.0 / w, fmt("w=%g beta*=%.17g", w, beta));
    const double lam = discretized_k_eigenvalues(AxisymmetricPotential::maier_saupe(w), gauss_rule(64)).front();
    r.require(std::abs(lam - w / 5.0) <= 1e-8, fmt("|lambda2-w/5|=%.2e", std::abs(lam - w / 5.0)));
  }
  return r;
}

Outcome c2() {
  Outcome r;
  for (double w : {1.0, 2.0}) {
    const auto s = analyze_spectrum(AxisymmetricPotential::maier_saupe(w), gauss_rule(64));
    const double beta = 5.0 / w;
    const double want = 8.0 / 5.0 * std::pow(2.0 * kPi / 5.0, 2) * beta * beta * w * w;
    const double b = s.transcriticality_b.value_or(std::nan(""));
    r.require(std::abs(b / want - 1.0) <= 1e-6, fmt("w=%g B=%.12g", w, b) + fmt(" target=%.12g", want));
    r.require(b > 0.0, "B>0");
  }
  return r;
}

Outcome c3() {
  Outcome r;
  const ScalarReduction model(1.0);
  for (double beta : {0.1, 0.2, 0.3}) {
    const auto roots = model.solve(beta);
    const bool one = roots.size() == 1;
    const double dev = one ? std::abs(roots[0].xi - 2.0 / 3.0) : 1.0;
    r.require(one && dev <= 1e-10, fmt("beta=%g roots=%g", beta, static_cast<double>(roots.size())) +
                                       fmt(" |xi-2/3|=%.1e", dev));
  }
  return r;
}

const PhaseDiagram& full_run() {
  static const PhaseDiagram d = trace_branches(ScalarReduction(1.0), 1.0, 20.0, 400);
  return d;
}

Outcome c4() {
  Outcome r;
  const ScalarReduction model(1.0);
  int found = 0;
  for (const auto& e : full_run().events)
    if (e.kind == EventKind::transcritical) {
      ++found;
      r.require(std::abs(e.beta - 5.0) <= 1e-3, fmt("transcritical beta=%.10g", e.beta));
      r.require(e.exchange_of_stability, "exchange of stability");
    }
  r.require(found == 1, fmt("transcritical events=%g", found));
  const double below = model.dF_dxi(5.0 - 1e-3, 2.0 / 3.0);
  const double above = model.dF_dxi(5.0 + 1e-3, 2.0 / 3.0);
  r.require(below < 1.0 && above > 1.0, fmt("dF/dxi(5-1e-3)=%.6f dF/dxi(5+1e-3)=%.6f", below, above));
  return r;
}

Outcome c5() {
  Outcome r;
  std::vector<double> folds;
  for (const auto& e : full_run().events)
    if (e.kind == EventKind::saddle_node) folds.push_back(e.beta);
  r.require(folds.size() == 1, fmt("saddle-node events=%g", static_cast<double>(folds.size())));
  if (folds.empty()) return r;
  r.require(folds[0] < 5.0, fmt("beta_sn=%.10g", folds[0]));
  const double brute = oracle::brute_fold_beta(1.0, 1.0, 4.99, 1e-6);
  r.require(std::abs(folds[0] - brute) <= 1e-4, fmt("oracle=%.10g diff=%.1e", brute, std::abs(folds[0] - brute)));
  return r;
}

Outcome c6() {
  Outcome r;
  const ScalarReduction model(1.0);
  const Branch a = low_temperature_branch(model, 10.0, 100.0, 40);
  const Branch b = low_temperature_branch(model, 100.0, 1e4, 80);
  const double x100 = a.points.back().xi;
  const double x1e4 = b.points.back().xi;
  r.require(std::abs(100.0 * x100 - 2.0 / 3.0) <= 0.05, fmt("100 xi(100)=%.6f", 100.0 * x100));
  r.require(x1e4 <= 1e-3, fmt("xi(1e4)=%.3e", x1e4));
  return r;
}

Outcome c7() {
  Outcome r;
  const auto rate = laplace_rate_check(ms, [](double t) { return std::sin(t); }, {25.0, 100.0, 400.0});
  r.require(rate.pass, fmt("ratios %.4f %.4f", rate.ratios.at(0), rate.ratios.at(1)));
  const auto cov = cumulant_decay_check([](double t) { return std::cos(t); }, [](double t) { return std::cos(t); },
                                        ms, {50.0, 100.0, 200.0, 400.0});
  r.require(cov.h_flat && cov.pass_one, fmt("beta cov at 200,400: %.4e %.4e", cov.scaled_one.at(2), cov.scaled_one.at(3)));
  return r;
}

Outcome c8() {
  Outcome r;
  const ScalarReduction model(1.0);
  const QuadratureRule rule = gauss_rule(64);
  PicardOptions opt;
  opt.tol = 1e-12;
  opt.max_iter = 100000;
  for (double beta : {3.0, 6.0, 10.0, 20.0})
    for (const auto& root : model.solve(beta)) {
      if (!root.stable) continue;
      const auto sol = solve_density(beta, ms1(), density_for_order_parameter(rule, beta, 1.0, root.xi), opt);
      const double diff = std::abs(sol.order_parameter - root.xi);
      r.require(sol.converged && diff <= 1e-8, fmt("beta=%g |dxi|=%.1e", beta, diff));
    }
  return r;
}

Outcome c9() {
  Outcome r;
  const QuadratureRule rule = gauss_rule(64);
  const std::vector<std::pair<const char*, OrientationDensity>> seeds = {
      {"prolate", OrientationDensity::prolate(rule)},
      {"uniform", OrientationDensity::uniform(rule)},
      {"oblate", OrientationDensity::from_profile(rule, [](double u) { return std::exp(-5.0 * u * u); })}};
  std::uint64_t seed = 1;
  for (double beta : {3.0, 6.0, 10.0, 20.0})
    for (const auto& [name, nu0] : seeds) {
      const auto sol = solve_density(beta, ms1(), nu0);
      if (!sol.converged) {
        r.require(false, fmt("beta=%g unconverged", beta) + " " + name);
        continue;
      }
      const auto v = free_energy_variation(beta, ms1(), sol.density, 1e-4, 20, seed++);
      r.require(v.max_scaled_change <= 10.0,
                fmt("beta=%g ", beta) + name + fmt(" max|df|/eps^2=%.3g", v.max_scaled_change));
    }
  return r;
}

Outcome c10() {
  Outcome r;
  const double xi1 = ScalarReduction(1.0).nematic_roots(10.0).front().xi;
  McOptions opt;
  opt.n_sweeps = 200000;
  opt.n_burnin = 20000;
  opt.seed = 1;
  std::vector<McEstimate> est;
  for (std::size_t n : {32, 64, 128, 256}) est.push_back(estimate_order_parameter(n, 10.0, ms1(), opt));
  const McEstimate& big = est.back();
  const double bias = std::abs(big.mean - xi1);
  r.require(bias <= 3.0 * big.std_error + 0.05,
            fmt("N=256 xi=%.6f se=%.1e", big.mean, big.std_error) + fmt(" xi1=%.6f", xi1));
  for (std::size_t k = 0; k + 1 < est.size(); ++k) {
    const double b0 = std::abs(est[k].mean - xi1);
    const double b1 = std::abs(est[k + 1].mean - xi1);
    const double slack = 3.0 * std::hypot(est[k].std_error, est[k + 1].std_error);
    r.require(b1 <= b0 + slack, fmt("|bias| N=%g: %.2e", static_cast<double>(est[k + 1].n_particles), b1));
  }
  return r;
}

struct Criterion {
  int id;
  std::function<Outcome()> check;
  double budget_seconds;  // 0: no runtime bar
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {{1, c1, 1.0},  {2, c2, 1.0}, {3, c3, 0.0}, {4, c4, 0.0},
                                      {5, c5, 0.0},  {6, c6, 10.0}, {7, c7, 5.0}, {8, c8, 0.0},
                                      {9, c9, 0.0}, {10, c10, 300.0}};
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool ok = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0.0) o.require(secs < c.budget_seconds, fmt("runtime %.2fs < %gs", secs, c.budget_seconds));
    else o.detail += fmt("; runtime %.2fs", secs);
    std::printf("%s c%d: %s\n", o.pass ? "PASS" : "FAIL", c.id, o.detail.c_str());
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
