#include "nematic/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nematic {

nlohmann::json FreeEnergyReport::to_json() const {
  return {{"beta", beta}, {"energy", energy}, {"entropy", entropy}, {"free_energy", free_energy}};
}

double entropy(const OrientationDensity& nu) {
  double acc = 0.0;
  const auto& rule = nu.rule();
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double v = nu[i];
    if (v > 0.0) acc += rule.weights[i] * v * std::log(v);
  }
  return -kTwoPi * acc;
}

FreeEnergyReport free_energy(double beta, const AxisymmetricPotential& potential,
                             const OrientationDensity& nu) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("free_energy: beta must be positive");
  const EffectivePotential h = effective_potential(potential, nu);
  double energy = 0.0;
  const auto& rule = nu.rule();
  for (std::size_t i = 0; i < nu.size(); ++i) energy += rule.weights[i] * nu[i] * h.values[i];
  energy *= 0.5 * kTwoPi;
  const double s = entropy(nu);
  return {beta, energy, s, energy - s / beta};
}

std::vector<RankedState> rank_branches(double beta, const AxisymmetricPotential& potential,
                                       const std::vector<LabelledState>& states) {
  std::vector<RankedState> ranked;
  ranked.reserve(states.size());
  for (const auto& s : states)
    ranked.push_back({s.label, order_parameter(s.density), free_energy(beta, potential, s.density),
                      false});
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedState& x, const RankedState& y) {
    return x.report.free_energy < y.report.free_energy;
  });
  for (std::size_t i = 1; i < ranked.size(); ++i)
    ranked[i].degenerate_with_previous =
        std::abs(ranked[i].report.free_energy - ranked[i - 1].report.free_energy) <= 1e-10;
  return ranked;
}

VariationCheck free_energy_variation(double beta, const AxisymmetricPotential& potential,
                                     const OrientationDensity& nu, double epsilon, int trials,
                                     std::uint64_t seed) {
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("free_energy_variation: epsilon must lie in (0, 1)");
  const double f0 = free_energy(beta, potential, nu).free_energy;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  VariationCheck out{epsilon, {}, 0.0};
  for (int t = 0; t < trials; ++t) {
    std::vector<double> r(nu.size());
    for (double& x : r) x = unit(rng);
    double mean = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) mean += nu.rule().weights[i] * nu[i] * r[i];
    mean *= kTwoPi;
    double sup = 0.0;
    for (double& x : r) {
      x -= mean;
      sup = std::max(sup, std::abs(x));
    }
    std::vector<double> v(nu.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = nu[i] * (1.0 + epsilon * r[i] / sup);
    const OrientationDensity perturbed(nu.rule(), std::move(v));
    const double df = free_energy(beta, potential, perturbed).free_energy - f0;
    out.changes.push_back(df);
    out.max_scaled_change = std::max(out.max_scaled_change, std::abs(df) / (epsilon * epsilon));
  }
  return out;
}

double coexistence_beta(const ScalarReduction& model, const QuadratureRule& rule, double beta_lo,
                        double beta_hi, double tol) {
  const auto potential = AxisymmetricPotential::maier_saupe(model.coupling());
  // f(nematic) - f(isotropic); undefined (no nematic root) below the fold
  auto gap = [&](double beta) {
    double xi = -1.0;
    for (const auto& r : model.nematic_roots(beta))
      if (r.stable && r.xi < ScalarReduction::kIsotropicXi) {
        xi = r.xi;
        break;
      }
    if (xi < 0.0)
      throw std::invalid_argument("coexistence_beta: no stable nematic root at beta=" +
                                  std::to_string(beta));
    const auto nem = density_for_order_parameter(rule, beta, model.coupling(), xi);
    const auto iso = OrientationDensity::uniform(rule);
    return free_energy(beta, potential, nem).free_energy -
           free_energy(beta, potential, iso).free_energy;
  };
  double g_lo = gap(beta_lo);
  const double g_hi = gap(beta_hi);
  if ((g_lo < 0.0) == (g_hi < 0.0))
    throw std::invalid_argument("coexistence_beta: free energies do not cross on the bracket");
  while (beta_hi - beta_lo > tol) {
    const double mid = 0.5 * (beta_lo + beta_hi);
    const double g = gap(mid);
    if ((g < 0.0) == (g_lo < 0.0)) {
      beta_lo = mid;
      g_lo = g;
    } else {
      beta_hi = mid;
    }
  }
  return 0.5 * (beta_lo + beta_hi);
}

}  // namespace nematic
