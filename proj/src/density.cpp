#include "nematic/density.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nematic {

OrientationDensity::OrientationDensity(QuadratureRule rule, std::vector<double> values)
    : rule_(std::move(rule)), values_(std::move(values)) {
  if (values_.size() != rule_.order())
    throw std::invalid_argument("OrientationDensity: value count does not match rule order");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("OrientationDensity: values must be finite and nonnegative");
  }
  const double m = mass();
  if (std::abs(m - 1.0) > kNormalizationTolerance)
    throw std::invalid_argument("OrientationDensity: mass " + std::to_string(m) + " is not 1");
}

OrientationDensity OrientationDensity::uniform(const QuadratureRule& rule) {
  return normalized(rule, std::vector<double>(rule.order(), 1.0 / kTwoPi));
}

OrientationDensity OrientationDensity::normalized(QuadratureRule rule, std::vector<double> values) {
  if (values.size() != rule.order())
    throw std::invalid_argument("OrientationDensity::normalized: size mismatch");
  const double m = kTwoPi * rule.dot(values);
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("OrientationDensity::normalized: profile has no finite mass");
  for (double& v : values) v /= m;
  return OrientationDensity(std::move(rule), std::move(values));
}

OrientationDensity OrientationDensity::from_profile(const QuadratureRule& rule,
                                                    const std::function<double(double)>& profile) {
  std::vector<double> values(rule.order());
  for (std::size_t i = 0; i < rule.order(); ++i) values[i] = profile(rule.nodes[i]);
  return normalized(rule, std::move(values));
}

OrientationDensity OrientationDensity::prolate(const QuadratureRule& rule, double kappa) {
  // shift the exponent so the largest factor is 1
  return from_profile(rule, [kappa](double u) { return std::exp(kappa * (u * u - 1.0)); });
}

OrientationDensity OrientationDensity::point_mass(const QuadratureRule& rule, std::size_t node) {
  if (node >= rule.order()) throw std::invalid_argument("point_mass: node index out of range");
  std::vector<double> values(rule.order(), 0.0);
  values[node] = 1.0;
  return normalized(rule, std::move(values));
}

double OrientationDensity::mass() const { return kTwoPi * rule_.dot(values_); }

double OrientationDensity::legendre_moment(int l) const {
  return expectation([l](double u) { return legendre_p(l, u); });
}

double OrientationDensity::sup_distance(const OrientationDensity& other) const {
  if (other.size() != size())
    throw std::invalid_argument("sup_distance: densities live on different rules");
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i) d = std::max(d, std::abs(values_[i] - other.values_[i]));
  return d;
}

}  // namespace nematic
