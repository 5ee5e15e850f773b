#include "nematic/sce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nematic {

namespace {

void require_beta(double beta, const char* where) {
  if (!std::isfinite(beta) || beta < 0.0)
    throw std::invalid_argument(std::string(where) + ": beta must be finite and nonnegative");
}

// sin^2 theta = 1 - u^2, written to keep relative accuracy next to the pole
inline double sin2_of(double u) { return (1.0 - u) * (1.0 + u); }

std::vector<double> boltzmann_weights(std::span<const double> exponents) {
  const double top = *std::max_element(exponents.begin(), exponents.end());
  std::vector<double> out(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) out[i] = std::exp(exponents[i] - top);
  return out;
}

}  // namespace

OrientationDensity sce_map(double beta, const AxisymmetricPotential& potential,
                           const OrientationDensity& nu) {
  require_beta(beta, "sce_map");
  const EffectivePotential h = effective_potential(potential, nu);
  std::vector<double> exponents(h.values.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) exponents[i] = -beta * h.values[i];
  return OrientationDensity::normalized(nu.rule(), boltzmann_weights(exponents));
}

FixedPointResult solve_density(double beta, const AxisymmetricPotential& potential,
                               const OrientationDensity& seed, const PicardOptions& options) {
  require_beta(beta, "solve_density");
  if (!(options.damping > 0.0 && options.damping <= 1.0))
    throw std::invalid_argument("solve_density: damping must lie in (0,1]");
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve_density: tol must be positive");

  OrientationDensity nu = seed;
  const double alpha = options.damping;
  double residual = 0.0;
  int it = 0;
  for (;; ++it) {
    const OrientationDensity image = sce_map(beta, potential, nu);
    residual = nu.sup_distance(image);
    if (residual <= options.tol || it >= options.max_iter) break;
    std::vector<double> next(nu.size());
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = (1.0 - alpha) * nu[i] + alpha * image[i];
    nu = OrientationDensity::normalized(nu.rule(), std::move(next));
  }
  const double xi = order_parameter(nu);
  return {std::move(nu), residual, it, residual <= options.tol, xi};
}

double order_parameter(const OrientationDensity& nu) {
  return nu.expectation([](double u) { return sin2_of(u); });
}

// ---------------------------------------------------------------------------
// Scalar reduction

ScalarReduction::ScalarReduction(double w) : ScalarReduction(w, default_rule()) {}

ScalarReduction::ScalarReduction(double w, QuadratureRule rule) : w_(w), rule_(std::move(rule)) {
  if (!(w > 0.0) || !std::isfinite(w))
    throw std::invalid_argument("ScalarReduction: coupling w must be positive");
  if (rule_.order() == 0) throw std::invalid_argument("ScalarReduction: empty quadrature rule");
}

QuadratureRule ScalarReduction::default_rule() {
  // [0, 1/2]: panels graded toward the equator (oblate side, xi > 2/3)
  // [1/2, 1]: panels graded toward the pole (prolate side, large beta)
  const QuadratureRule pole = graded_rule(16, 40, 0.5);
  const QuadratureRule equator = reflected(graded_rule(16, 16, 0.5));
  QuadratureRule rule;
  for (std::size_t i = 0; i < equator.order(); ++i) {
    rule.nodes.push_back(0.5 * equator.nodes[i]);
    rule.weights.push_back(0.5 * equator.weights[i]);
  }
  for (std::size_t i = 0; i < pole.order(); ++i) {
    rule.nodes.push_back(0.5 + 0.5 * pole.nodes[i]);
    rule.weights.push_back(0.5 * pole.weights[i]);
  }
  return rule;
}

ScalarReduction::Moments ScalarReduction::tilted_moments(double beta, double xi) const {
  // beta w (1 - 3xi/2)(1 - P_2) = a sin^2, with a = (3/2) beta w (1 - 3xi/2)
  const double a = 1.5 * beta * w_ * (1.0 - 1.5 * xi);
  const std::size_t n = rule_.order();
  std::vector<double> exponents(n);
  for (std::size_t i = 0; i < n; ++i) exponents[i] = -a * sin2_of(rule_.nodes[i]);
  const std::vector<double> e = boltzmann_weights(exponents);
  double z = 0.0;
  double m1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double we = rule_.weights[i] * e[i];
    z += we;
    m1 += we * sin2_of(rule_.nodes[i]);
  }
  const double mean = m1 / z;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = sin2_of(rule_.nodes[i]) - mean;
    var += rule_.weights[i] * e[i] * d * d;
  }
  return {mean, var / z};
}

double ScalarReduction::F(double beta, double xi) const {
  require_beta(beta, "F_scalar");
  return tilted_moments(beta, xi).mean;
}

double ScalarReduction::dF_dxi(double beta, double xi) const {
  require_beta(beta, "dF_dxi");
  return 2.25 * beta * w_ * tilted_moments(beta, xi).variance;
}

double ScalarReduction::deflated(double beta, double xi) const {
  // G / (xi - 2/3), continuous through the isotropic root with limit 1 - dF/dxi
  constexpr double kBlend = 1e-6;
  const double d = xi - kIsotropicXi;
  if (std::abs(d) >= kBlend) return G(beta, xi) / d;
  const double at_iso = 1.0 - dF_dxi(beta, kIsotropicXi);
  const double side = (d >= 0.0) ? kBlend : -kBlend;
  const double off = G(beta, kIsotropicXi + side) / side;
  return at_iso + (off - at_iso) * (d / side);
}

ScalarRoot ScalarReduction::classify(double beta, double xi) const {
  const double slope = dF_dxi(beta, xi);
  return {xi, slope, slope < 1.0, xi > kIsotropicXi + 1e-12, std::abs(G(beta, xi))};
}

double ScalarReduction::bisect(double beta, double lo, double hi, double tol) const {
  double glo = G(beta, lo);
  const double ghi = G(beta, hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo < 0.0) == (ghi < 0.0))
    throw std::invalid_argument("ScalarReduction::bisect: no sign change on bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = G(beta, mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ScalarRoot> ScalarReduction::nematic_roots(double beta,
                                                       const ScanOptions& options) const {
  require_beta(beta, "solve_scalar");
  if (options.scan_points < 100)
    throw std::invalid_argument("solve_scalar: scan_points must be at least 100");
  const int n = options.scan_points;
  std::vector<double> xs(n);
  std::vector<double> gs(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = static_cast<double>(k) / (n - 1);
    gs[k] = deflated(beta, xs[k]);
  }

  auto dbisect = [&](double lo, double hi) {
    double glo = deflated(beta, lo);
    while (hi - lo > options.tol) {
      const double mid = 0.5 * (lo + hi);
      const double gm = deflated(beta, mid);
      if (gm == 0.0) return mid;
      if ((gm < 0.0) == (glo < 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  std::vector<double> found;
  for (int k = 0; k < n; ++k) {
    if (gs[k] == 0.0) {
      found.push_back(xs[k]);
      continue;
    }
    if (k + 1 < n && gs[k + 1] != 0.0 && (gs[k] < 0.0) != (gs[k + 1] < 0.0))
      found.push_back(dbisect(xs[k], xs[k + 1]));
  }

  // A root pair closer than the scan spacing hides inside a cell whose
  // endpoints share a sign; the discrete extremum of |G| marks it.
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int k = 1; k + 1 < n; ++k) {
    const double s = (gs[k] > 0.0) ? 1.0 : -1.0;
    if (gs[k] == 0.0 || s * gs[k - 1] <= 0.0 || s * gs[k + 1] <= 0.0) continue;
    if (s * gs[k] > s * gs[k - 1] || s * gs[k] > s * gs[k + 1]) continue;
    double a = xs[k - 1];
    double b = xs[k + 1];
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
      const double x1 = b - golden * (b - a);
      const double x2 = a + golden * (b - a);
      if (s * deflated(beta, x1) < s * deflated(beta, x2))
        b = x2;
      else
        a = x1;
    }
    const double xm = 0.5 * (a + b);
    if (s * deflated(beta, xm) < 0.0) {
      found.push_back(dbisect(xs[k - 1], xm));
      found.push_back(dbisect(xm, xs[k + 1]));
    }
  }

  std::sort(found.begin(), found.end());
  std::vector<ScalarRoot> roots;
  for (double x : found) {
    if (!roots.empty() && std::abs(roots.back().xi - x) < 1e-11) continue;
    roots.push_back(classify(beta, x));
  }
  return roots;
}

std::vector<ScalarRoot> ScalarReduction::solve(double beta, const ScanOptions& options) const {
  std::vector<ScalarRoot> roots;
  for (const auto& r : nematic_roots(beta, options)) {
    // a nematic root on top of the isotropic one only happens at the
    // transcritical point; report the double root once
    if (std::abs(r.xi - kIsotropicXi) > 1e-9) roots.push_back(r);
  }
  roots.push_back(classify(beta, kIsotropicXi));
  std::sort(roots.begin(), roots.end(),
            [](const ScalarRoot& x, const ScalarRoot& y) { return x.xi < y.xi; });
  return roots;
}

OrientationDensity density_for_order_parameter(const QuadratureRule& rule, double beta, double w,
                                               double xi) {
  require_beta(beta, "density_for_order_parameter");
  const double p2 = 1.0 - 1.5 * xi;
  std::vector<double> exponents(rule.order());
  for (std::size_t i = 0; i < rule.order(); ++i)
    exponents[i] = beta * w * p2 * legendre_any(2, rule.nodes[i]);
  return OrientationDensity::normalized(rule, boltzmann_weights(exponents));
}

}  // namespace nematic
