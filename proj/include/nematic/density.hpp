#pragma once

#include <functional>
#include <vector>

#include "nematic/numerics.hpp"

namespace nematic {

/// Axisymmetric probability density on the half-sphere, sampled at the nodes
/// of a quadrature rule in u = cos(theta).
///
/// Values are per unit solid angle, so 2*pi * sum_i w_i nu(u_i) = 1.
class OrientationDensity {
 public:
  static constexpr double kNormalizationTolerance = 1e-12;

  /// Validates nonnegativity and normalization; throws std::invalid_argument.
  OrientationDensity(QuadratureRule rule, std::vector<double> values);

  /// nu = 1/(2 pi).
  static OrientationDensity uniform(const QuadratureRule& rule);

  /// Samples a nonnegative profile f(u) and rescales it to unit mass.
  static OrientationDensity from_profile(const QuadratureRule& rule,
                                         const std::function<double(double)>& profile);

  /// Rescales raw nonnegative node values to unit mass.
  static OrientationDensity normalized(QuadratureRule rule, std::vector<double> values);

  /// Prolate seed proportional to exp(kappa u^2), the default anisotropic start.
  static OrientationDensity prolate(const QuadratureRule& rule, double kappa = 5.0);

  /// A density carrying all of its mass on a single node.
  static OrientationDensity point_mass(const QuadratureRule& rule, std::size_t node);

  [[nodiscard]] const QuadratureRule& rule() const noexcept { return rule_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

  /// 2*pi * int_0^1 nu(u) g(u) du, i.e. the expectation of g.
  template <typename G>
  [[nodiscard]] double expectation(G&& g) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
      acc += rule_.weights[i] * values_[i] * g(rule_.nodes[i]);
    return kTwoPi * acc;
  }

  [[nodiscard]] double mass() const;

  /// <P_l(cos theta)>_nu.
  [[nodiscard]] double legendre_moment(int l) const;

  /// Max |nu_i - other_i| over nodes. Rules must match.
  [[nodiscard]] double sup_distance(const OrientationDensity& other) const;

 private:
  QuadratureRule rule_;
  std::vector<double> values_;
};

}  // namespace nematic
