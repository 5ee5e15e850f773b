#include "nematic/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace nematic {

namespace {

constexpr double kIso = ScalarReduction::kIsotropicXi;
constexpr double kOnIsotropic = 1e-10;
constexpr double kAmbiguous = 1e-6;

BranchPoint to_point(double beta, const ScalarRoot& r) {
  return {beta, r.xi, r.dF_dxi, r.stable, r.residual};
}

std::vector<std::vector<ScalarRoot>> scan_grid(const ScalarReduction& model,
                                               const std::vector<double>& betas,
                                               const TraceOptions& options) {
  std::vector<std::vector<ScalarRoot>> roots(betas.size());
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(betas.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < betas.size(); k = next++)
      roots[k] = model.nematic_roots(betas[k], options.scan);
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }
  return roots;
}

int sign_off_isotropic(double xi) {
  const double d = xi - kIso;
  if (std::abs(d) < kOnIsotropic) return 0;
  return d > 0.0 ? 1 : -1;
}

}  // namespace

std::string to_string(BranchKind kind) {
  switch (kind) {
    case BranchKind::isotropic: return "isotropic";
    case BranchKind::nematic_lower: return "nematic-lower";
    case BranchKind::nematic_upper: return "nematic-upper";
  }
  return "unknown";
}

std::string to_string(EventKind kind) {
  return kind == EventKind::saddle_node ? "saddle-node" : "transcritical";
}

nlohmann::json BifurcationEvent::to_json() const {
  nlohmann::json j{{"kind", to_string(kind)},
                   {"beta", beta},
                   {"xi", xi},
                   {"refinement_error", refinement_error}};
  if (kind == EventKind::transcritical) j["exchange_of_stability"] = exchange_of_stability;
  return j;
}

double PhaseDiagram::max_residual() const {
  double r = 0.0;
  for (const auto& b : branches)
    for (const auto& p : b.points) r = std::max(r, p.residual);
  return r;
}

std::string PhaseDiagram::to_csv() const {
  std::string out = "beta,xi,dF_dxi,stable,residual,branch_kind\n";
  char line[256];
  for (const auto& b : branches) {
    const std::string kind = to_string(b.kind);
    for (const auto& p : b.points) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%s,%.17g,%s\n", p.beta, p.xi, p.dF_dxi,
                    p.stable ? "true" : "false", p.residual, kind.c_str());
      out += line;
    }
  }
  return out;
}

nlohmann::json PhaseDiagram::events_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : events) j.push_back(e.to_json());
  return j;
}

PhaseDiagram trace_branches(const ScalarReduction& model, double beta_min, double beta_max,
                            int beta_steps, const TraceOptions& options) {
  if (!(beta_min > 0.0) || !(beta_max > beta_min) || !std::isfinite(beta_max))
    throw std::invalid_argument("trace_branches: need 0 < beta_min < beta_max");
  if (beta_steps < 2) throw std::invalid_argument("trace_branches: need at least 2 beta steps");

  std::vector<double> betas(beta_steps);
  for (int k = 0; k < beta_steps; ++k)
    betas[k] = beta_min + (beta_max - beta_min) * k / (beta_steps - 1);
  const auto grid = scan_grid(model, betas, options);

  PhaseDiagram diagram;

  Branch iso{BranchKind::isotropic, {}};
  for (double beta : betas) iso.points.push_back(to_point(beta, model.classify(beta, kIso)));
  diagram.branches.push_back(std::move(iso));

  // --- link nematic roots across the grid --------------------------------
  std::vector<Branch> nematic;
  std::vector<std::size_t> active;  // indices into `nematic` alive at the previous step
  for (std::size_t k = 0; k < betas.size(); ++k) {
    const auto& roots = grid[k];
    bool ambiguous = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
      if (roots[i + 1].xi - roots[i].xi < kAmbiguous) ambiguous = true;
    if (ambiguous)
      diagram.log.push_back("ambiguous linking at beta=" + std::to_string(betas[k]) +
                            ": roots closer than 1e-6, matching by stability");

    struct Candidate {
      double cost;
      std::size_t branch;
      std::size_t root;
    };
    std::vector<Candidate> candidates;
    for (std::size_t a : active) {
      const auto& pts = nematic[a].points;
      double predicted = pts.back().xi;
      if (pts.size() >= 2) {
        const auto& p0 = pts[pts.size() - 2];
        const auto& p1 = pts.back();
        predicted = p1.xi + (p1.xi - p0.xi) / (p1.beta - p0.beta) * (betas[k] - p1.beta);
      }
      for (std::size_t r = 0; r < roots.size(); ++r) {
        double cost = std::abs(roots[r].xi - predicted);
        if (ambiguous && roots[r].stable != pts.back().stable) cost += 10.0;
        candidates.push_back({cost, a, r});
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) { return x.cost < y.cost; });
    std::vector<bool> root_used(roots.size(), false);
    std::vector<std::size_t> next_active;
    std::vector<bool> branch_used(nematic.size(), false);
    for (const auto& c : candidates) {
      if (root_used[c.root] || branch_used[c.branch]) continue;
      root_used[c.root] = true;
      branch_used[c.branch] = true;
      nematic[c.branch].points.push_back(to_point(betas[k], roots[c.root]));
      next_active.push_back(c.branch);
    }
    for (std::size_t r = 0; r < roots.size(); ++r) {
      if (root_used[r]) continue;
      nematic.push_back({BranchKind::nematic_lower, {to_point(betas[k], roots[r])}});
      next_active.push_back(nematic.size() - 1);
    }
    active = std::move(next_active);
  }
  // the fold member born unstable, and anything reaching past 2/3, is the upper branch
  for (auto& b : nematic) {
    const bool above = std::any_of(b.points.begin(), b.points.end(),
                                   [](const BranchPoint& p) { return p.xi > kIso; });
    b.kind = (above || !b.points.front().stable) ? BranchKind::nematic_upper
                                                  : BranchKind::nematic_lower;
  }

  // --- folds: the nematic root count changes between grid points ----------
  for (std::size_t k = 0; k + 1 < betas.size(); ++k) {
    const auto n0 = grid[k].size();
    const auto n1 = grid[k + 1].size();
    if (n0 == n1) continue;
    const auto diff = n0 > n1 ? n0 - n1 : n1 - n0;
    if (diff != 2) {
      diagram.log.push_back("root count changes by " + std::to_string(diff) + " near beta=" +
                            std::to_string(betas[k]) + "; not classified");
      continue;
    }
    double lo = betas[k];
    double hi = betas[k + 1];
    std::vector<ScalarRoot> more = n0 > n1 ? grid[k] : grid[k + 1];
    while (hi - lo > options.refine_width) {
      const double mid = 0.5 * (lo + hi);
      auto roots = model.nematic_roots(mid, options.scan);
      const bool like_lo = roots.size() == n0;
      if (like_lo)
        lo = mid;
      else
        hi = mid;
      if (roots.size() == std::max(n0, n1)) more = std::move(roots);
    }
    // the newborn pair is the closest pair among the roots on the richer side
    double xi = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < more.size(); ++i) {
      if (more[i + 1].xi - more[i].xi < gap) {
        gap = more[i + 1].xi - more[i].xi;
        xi = 0.5 * (more[i + 1].xi + more[i].xi);
      }
    }
    diagram.events.push_back({EventKind::saddle_node, 0.5 * (lo + hi), xi, hi - lo});
  }

  // --- transcritical: a nematic branch crosses the isotropic line --------
  for (const auto& b : nematic) {
    std::size_t last = b.points.size();  // last point with nonzero side
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      const int s = sign_off_isotropic(b.points[i].xi);
      if (s == 0) continue;
      if (last != b.points.size() && s != sign_off_isotropic(b.points[last].xi)) {
        const BranchPoint p0 = b.points[last];
        const BranchPoint p1 = b.points[i];
        const int s0 = sign_off_isotropic(p0.xi);
        double lo = p0.beta;
        double hi = p1.beta;
        double xi_lo = p0.xi;
        double xi_hi = p1.xi;
        double xi_at = kIso;
        while (hi - lo > options.refine_width) {
          const double mid = 0.5 * (lo + hi);
          const double predicted = xi_lo + (xi_hi - xi_lo) * (mid - lo) / (hi - lo);
          const auto roots = model.nematic_roots(mid, options.scan);
          if (roots.empty()) break;
          const auto nearest = std::min_element(
              roots.begin(), roots.end(), [predicted](const ScalarRoot& x, const ScalarRoot& y) {
                return std::abs(x.xi - predicted) < std::abs(y.xi - predicted);
              });
          xi_at = nearest->xi;
          const int s_mid = sign_off_isotropic(nearest->xi);
          if (s_mid == 0) {
            lo = hi = mid;
            break;
          }
          if (s_mid == s0) {
            lo = mid;
            xi_lo = nearest->xi;
          } else {
            hi = mid;
            xi_hi = nearest->xi;
          }
        }
        BifurcationEvent e{EventKind::transcritical, 0.5 * (lo + hi), xi_at, hi - lo};
        const double d_lo = model.dF_dxi(p0.beta, kIso) - 1.0;
        const double d_hi = model.dF_dxi(p1.beta, kIso) - 1.0;
        e.exchange_of_stability = (d_lo < 0.0) != (d_hi < 0.0);
        diagram.events.push_back(e);
      }
      last = i;
    }
  }
  std::sort(diagram.events.begin(), diagram.events.end(),
            [](const BifurcationEvent& x, const BifurcationEvent& y) { return x.beta < y.beta; });

  for (auto& b : nematic) diagram.branches.push_back(std::move(b));
  return diagram;
}

Branch low_temperature_branch(const ScalarReduction& model, double beta_start, double beta_end,
                              int steps) {
  if (beta_start * model.coupling() < 10.0)
    throw std::invalid_argument("low_temperature_branch: beta_start * w must be at least 10");
  if (!(beta_end > beta_start) || steps < 2)
    throw std::invalid_argument("low_temperature_branch: need beta_end > beta_start, steps >= 2");

  auto scan_for_stable = [&](double beta) {
    for (const auto& r : model.nematic_roots(beta))
      if (r.xi < kIso && r.stable) return r;
    throw std::runtime_error("low_temperature_branch: no stable prolate root at beta=" +
                             std::to_string(beta) + " (quadrature under-resolved?)");
  };

  Branch branch{BranchKind::nematic_lower, {}};
  ScalarRoot current = scan_for_stable(beta_start);
  branch.points.push_back(to_point(beta_start, current));
  const double ratio = std::pow(beta_end / beta_start, 1.0 / (steps - 1));
  for (int k = 1; k < steps; ++k) {
    const double beta = (k + 1 == steps) ? beta_end : beta_start * std::pow(ratio, k);
    const double prev = current.xi;
    if (model.G(beta, 0.0) < 0.0 && model.G(beta, prev) > 0.0)
      current = model.classify(beta, model.bisect(beta, 0.0, prev));
    else
      current = scan_for_stable(beta);
    if (!current.stable || current.xi >= prev)
      throw std::runtime_error("low_temperature_branch: order parameter did not decrease at beta=" +
                               std::to_string(beta));
    branch.points.push_back(to_point(beta, current));
  }
  return branch;
}

}  // namespace nematic
