#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace nematic {

/// Raised when an integrand or intermediate quantity leaves the real line
/// (NaN, infinity) at a quadrature node.
class NumericalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr int kMaxLegendreDegree = 16;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Nodes and weights on [0,1] in the variable u = cos(theta).
///
/// Weights sum to one, so `integrate` approximates the plain integral over
/// [0,1]; the half-sphere measure sin(theta) dtheta dphi becomes du dphi and
/// carries an extra factor 2*pi wherever the azimuth has been integrated out.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t order() const noexcept { return nodes.size(); }

  /// Sum of w_i * values_i.
  [[nodiscard]] double dot(std::span<const double> values) const;

  /// Sum of w_i * f(u_i).
  template <typename F>
  [[nodiscard]] double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule mapped affinely from [-1,1] onto [0,1].
/// Exact for polynomials of degree <= 2n-1. Throws std::invalid_argument for n == 0.
QuadratureRule gauss_rule(std::size_t n);

/// Composite Gauss rule with geometrically shrinking panels toward u = 1.
///
/// Panel k (k = 0..panels-1) covers [1 - ratio^k, 1 - ratio^(k+1)] and the last
/// panel extends to 1. Used for Boltzmann factors that concentrate at the pole
/// faster than a single global rule can resolve (large beta).
QuadratureRule graded_rule(std::size_t nodes_per_panel, std::size_t panels, double ratio = 0.5);

/// Same rule with nodes mirrored u -> 1 - u (clustering toward 0).
QuadratureRule reflected(const QuadratureRule& rule);

/// Approximates int_0^{pi/2} f(theta) sin(theta) dtheta = int_0^1 f(arccos u) du.
/// Throws NumericalDomainError if f is not finite at some node.
double half_sphere_integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

/// P_l(u) by the three-term recurrence, for even 0 <= l <= kMaxLegendreDegree.
/// Odd degrees are rejected: rods are head-tail symmetric.
double legendre_p(int l, double u);

/// Unrestricted recurrence, any degree l >= 0. Internal building block.
double legendre_any(int l, double u) noexcept;

}  // namespace nematic
