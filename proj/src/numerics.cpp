#include "nematic/numerics.hpp"

#include <cmath>
#include <string>

namespace nematic {

double QuadratureRule::dot(std::span<const double> values) const {
  if (values.size() != weights.size())
    throw std::invalid_argument("QuadratureRule::dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * values[i];
  return acc;
}

double legendre_any(int l, double u) noexcept {
  if (l == 0) return 1.0;
  double prev = 1.0;
  double curr = u;
  for (int k = 1; k < l; ++k) {
    const double next = ((2.0 * k + 1.0) * u * curr - k * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double legendre_p(int l, double u) {
  if (l < 0 || l > kMaxLegendreDegree)
    throw std::invalid_argument("legendre_p: degree " + std::to_string(l) + " outside [0, 16]");
  if (l % 2 != 0)
    throw std::invalid_argument("legendre_p: odd degree " + std::to_string(l) +
                                " violates head-tail symmetry");
  return legendre_any(l, u);
}

namespace {

// Gauss-Legendre on [-1,1] by Newton iteration from the Tricomi initial guess.
void gauss_legendre_reference(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd + 1.0) * z * p1 - kd * p0) / (kd + 1.0);
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(z), p0 = P_{n-1}(z)
      dp = nd * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    if (n == 1) {
      z = 0.0;
      dp = 1.0;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

QuadratureRule gauss_rule(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_rule: node count must be positive");
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre_reference(n, x, w);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

QuadratureRule graded_rule(std::size_t nodes_per_panel, std::size_t panels, double ratio) {
  if (nodes_per_panel == 0 || panels == 0)
    throw std::invalid_argument("graded_rule: panel and node counts must be positive");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("graded_rule: ratio must lie in (0,1)");
  const QuadratureRule base = gauss_rule(nodes_per_panel);
  QuadratureRule rule;
  rule.nodes.reserve(nodes_per_panel * panels);
  rule.weights.reserve(nodes_per_panel * panels);
  double left = 0.0;
  double gap = 1.0;  // distance from `left` to 1
  for (std::size_t k = 0; k < panels; ++k) {
    const double right = (k + 1 == panels) ? 1.0 : 1.0 - gap * ratio;
    const double h = right - left;
    for (std::size_t i = 0; i < base.order(); ++i) {
      rule.nodes.push_back(left + h * base.nodes[i]);
      rule.weights.push_back(h * base.weights[i]);
    }
    left = right;
    gap *= ratio;
  }
  return rule;
}

QuadratureRule reflected(const QuadratureRule& rule) {
  QuadratureRule out;
  const std::size_t n = rule.order();
  out.nodes.resize(n);
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.nodes[i] = 1.0 - rule.nodes[n - 1 - i];
    out.weights[i] = rule.weights[n - 1 - i];
  }
  return out;
}

double half_sphere_integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) {
    const double value = f(std::acos(rule.nodes[i]));
    if (!std::isfinite(value))
      throw NumericalDomainError("half_sphere_integrate: non-finite integrand at u = " +
                                 std::to_string(rule.nodes[i]));
    acc += rule.weights[i] * value;
  }
  return acc;
}

}  // namespace nematic
