#include "nematic/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nematic {

AxisymmetricPotential::AxisymmetricPotential(std::map<int, double> coeffs, std::string label)
    : label_(std::move(label)) {
  for (const auto& [l, c] : coeffs) {
    if (l < 0 || l > kMaxLegendreDegree)
      throw std::invalid_argument("AxisymmetricPotential: degree " + std::to_string(l) +
                                  " outside [0, 16]");
    if (l % 2 != 0)
      throw std::invalid_argument("AxisymmetricPotential: odd degree " + std::to_string(l) +
                                  " is not head-tail symmetric");
    if (!std::isfinite(c))
      throw std::invalid_argument("AxisymmetricPotential: non-finite coefficient");
    if (c != 0.0) coeffs_.emplace(l, c);
  }
}

AxisymmetricPotential AxisymmetricPotential::maier_saupe(double w) {
  if (!(w > 0.0) || !std::isfinite(w))
    throw std::invalid_argument("maier_saupe: coupling w must be positive");
  return AxisymmetricPotential({{0, w}, {2, -w}}, "maier-saupe");
}

AxisymmetricPotential AxisymmetricPotential::from_json(const nlohmann::json& desc) {
  if (!desc.is_object() || !desc.contains("type"))
    throw std::invalid_argument("potential description must be an object with a \"type\" key");
  const auto type = desc.at("type").get<std::string>();
  if (type == "maier-saupe") {
    if (!desc.contains("w") || !desc.at("w").is_number())
      throw std::invalid_argument("maier-saupe potential requires numeric \"w\"");
    return maier_saupe(desc.at("w").get<double>());
  }
  if (type == "legendre") {
    if (!desc.contains("coeffs") || !desc.at("coeffs").is_object())
      throw std::invalid_argument("legendre potential requires a \"coeffs\" object");
    std::map<int, double> coeffs;
    for (const auto& [key, value] : desc.at("coeffs").items()) {
      std::size_t pos = 0;
      int l = 0;
      try {
        l = std::stoi(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size() || key.empty())
        throw std::invalid_argument("legendre coefficient key \"" + key + "\" is not an integer");
      if (!value.is_number())
        throw std::invalid_argument("legendre coefficient for degree " + key + " is not numeric");
      coeffs[l] = value.get<double>();
    }
    return AxisymmetricPotential(std::move(coeffs),
                                 desc.value("label", std::string("legendre")));
  }
  throw std::invalid_argument("unknown potential type \"" + type + "\"");
}

nlohmann::json AxisymmetricPotential::to_json() const {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [l, c] : coeffs_) coeffs[std::to_string(l)] = c;
  return {{"type", "legendre"}, {"label", label_}, {"coeffs", coeffs}};
}

double AxisymmetricPotential::operator()(double cos_gamma) const {
  double acc = 0.0;
  for (const auto& [l, c] : coeffs_) acc += c * legendre_any(l, cos_gamma);
  return acc;
}

double AxisymmetricPotential::coefficient(int l) const {
  const auto it = coeffs_.find(l);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int AxisymmetricPotential::max_degree() const noexcept {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

double AxisymmetricPotential::sup_norm() const {
  // Polynomial of degree <= 16: a fine scan brackets the maximum, golden
  // section polishes it.
  constexpr int kSamples = 4096;
  double best = 0.0;
  int best_k = 0;
  for (int k = 0; k <= kSamples; ++k) {
    const double v = std::abs((*this)(static_cast<double>(k) / kSamples));
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  double a = std::max(0.0, (best_k - 1.0) / kSamples);
  double b = std::min(1.0, (best_k + 1.0) / kSamples);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double x1 = b - g * (b - a);
    const double x2 = a + g * (b - a);
    if (std::abs((*this)(x1)) > std::abs((*this)(x2)))
      b = x2;
    else
      a = x1;
  }
  return std::max(best, std::abs((*this)(0.5 * (a + b))));
}

AxisymmetricPotential AxisymmetricPotential::deviation() const {
  auto coeffs = coeffs_;
  coeffs.erase(0);
  return AxisymmetricPotential(std::move(coeffs), label_ + " (deviation)");
}

bool AxisymmetricPotential::is_constant() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.first == 0; });
}

ProjectedPotential project_kernel(const std::function<double(double)>& kernel, std::string label,
                                  int max_degree) {
  if (max_degree < 0 || max_degree > kMaxLegendreDegree)
    throw std::invalid_argument("project_kernel: max_degree outside [0, 16]");
  const QuadratureRule rule = gauss_rule(128);
  std::vector<double> xs(rule.order());
  std::vector<double> ws(rule.order());
  std::vector<double> vs(rule.order());
  for (std::size_t i = 0; i < rule.order(); ++i) {
    xs[i] = 2.0 * rule.nodes[i] - 1.0;
    ws[i] = 2.0 * rule.weights[i];
    vs[i] = kernel(xs[i]);
    if (!std::isfinite(vs[i]))
      throw NumericalDomainError("project_kernel: kernel is not finite on [-1,1]");
  }
  std::map<int, double> coeffs;
  for (int l = 0; l <= max_degree; l += 2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * vs[i] * legendre_any(l, xs[i]);
    coeffs[l] = 0.5 * (2.0 * l + 1.0) * acc;
  }
  AxisymmetricPotential potential(std::move(coeffs), std::move(label));
  double residual = 0.0;
  constexpr int kProbe = 2000;
  for (int k = 0; k <= kProbe; ++k) {
    const double x = -1.0 + 2.0 * k / kProbe;
    residual = std::max(residual, std::abs(kernel(x) - potential(x)));
  }
  return {std::move(potential), residual};
}

ConstancyCheck check_constant_mean(const AxisymmetricPotential& potential,
                                   const QuadratureRule& rule, double tol) {
  // int_0^{2pi} P_l(m.m') dphi' = 2 pi P_l(u) P_l(u'), so the m-dependent mean
  // is sum_l c_l P_l(u) * 2 pi int_0^1 P_l(u') du'.
  std::map<int, double> polar;
  for (const auto& [l, c] : potential.coefficients())
    polar[l] = kTwoPi * rule.integrate([l](double u) { return legendre_any(l, u); });

  constexpr int kProbes = 65;
  double lo = 0.0;
  double hi = 0.0;
  double sum = 0.0;
  for (int k = 0; k < kProbes; ++k) {
    const double u = static_cast<double>(k) / (kProbes - 1);
    double mean = 0.0;
    for (const auto& [l, c] : potential.coefficients()) mean += c * legendre_any(l, u) * polar[l];
    if (k == 0 || mean < lo) lo = mean;
    if (k == 0 || mean > hi) hi = mean;
    sum += mean;
  }
  const double spread = hi - lo;
  return {spread <= tol, spread, sum / kProbes};
}

double EffectivePotential::at(double u) const {
  double acc = 0.0;
  for (const auto& [l, a] : field) acc += a * legendre_any(l, u);
  return acc;
}

double EffectivePotential::min_value() const {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

double EffectivePotential::dense_minimum(const QuadratureRule& rule, int refine) const {
  std::vector<double> grid{0.0};
  grid.insert(grid.end(), rule.nodes.begin(), rule.nodes.end());
  grid.push_back(1.0);
  double best = at(grid.front());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    for (int k = 0; k <= refine; ++k) {
      const double u = grid[i] + (grid[i + 1] - grid[i]) * k / refine;
      best = std::min(best, at(u));
    }
  }
  return best;
}

bool EffectivePotential::has_unique_minimum(int samples) const {
  std::vector<double> v(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) v[k] = at(static_cast<double>(k) / (samples - 1));
  int minima = 0;
  for (int k = 0; k < samples; ++k) {
    const bool left_ok = (k == 0) || v[k] < v[k - 1];
    const bool right_ok = (k + 1 == samples) || v[k] < v[k + 1];
    if (left_ok && right_ok) ++minima;
  }
  return minima == 1;
}

EffectivePotential effective_potential(const AxisymmetricPotential& potential,
                                       const OrientationDensity& nu) {
  if (std::abs(nu.mass() - 1.0) > OrientationDensity::kNormalizationTolerance)
    throw std::invalid_argument("effective_potential: density is not normalized");
  EffectivePotential h;
  for (const auto& [l, c] : potential.coefficients()) {
    // the l = 0 moment of a probability density is exactly 1
    const double moment = (l == 0) ? 1.0 : nu.legendre_moment(l);
    h.legendre_moments[l] = moment;
    h.field[l] = c * moment;
  }
  const auto& nodes = nu.rule().nodes;
  h.values.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) h.values[i] = h.at(nodes[i]);
  return h;
}

}  // namespace nematic
