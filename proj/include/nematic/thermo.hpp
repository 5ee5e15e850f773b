#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nematic/density.hpp"
#include "nematic/potential.hpp"
#include "nematic/sce.hpp"

namespace nematic {

/// Mean-field free energy per particle of a product state nu^{(x)N}:
/// f = (1/2) int int U nu nu - S(nu) / beta with S(nu) = -int nu ln nu.
struct FreeEnergyReport {
  double beta;
  double energy;
  double entropy;
  double free_energy;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// -int_M nu ln nu with 0 ln 0 = 0. At most ln(2 pi), attained by the uniform density.
double entropy(const OrientationDensity& nu);

FreeEnergyReport free_energy(double beta, const AxisymmetricPotential& potential,
                             const OrientationDensity& nu);

struct LabelledState {
  std::string label;
  OrientationDensity density;
};

struct RankedState {
  std::string label;
  double order_parameter;
  FreeEnergyReport report;
  bool degenerate_with_previous;  // free energy within 1e-10 of the entry above
};

/// Sorts solutions of the self-consistency equation by ascending free energy.
std::vector<RankedState> rank_branches(double beta, const AxisymmetricPotential& potential,
                                       const std::vector<LabelledState>& states);

/// Response of the free energy to random mass-preserving perturbations
/// nu -> nu (1 + epsilon (r - <r>_nu)) with i.i.d. node values r in [-1, 1],
/// rescaled so that sup |r - <r>_nu| = 1. At a solution of the
/// self-consistency equation the first variation vanishes and every change
/// is O(epsilon^2).
struct VariationCheck {
  double epsilon;
  std::vector<double> changes;  // f(perturbed) - f(nu)
  double max_scaled_change;     // max |change| / epsilon^2
};

VariationCheck free_energy_variation(double beta, const AxisymmetricPotential& potential,
                                     const OrientationDensity& nu, double epsilon, int trials,
                                     std::uint64_t seed);

/// Maier-Saupe coupling w: the beta in (beta_lo, beta_hi) at which the stable
/// nematic root and the isotropic state have equal free energy, by bisection.
/// The bracket must contain the crossing; throws std::invalid_argument otherwise.
double coexistence_beta(const ScalarReduction& model, const QuadratureRule& rule, double beta_lo,
                        double beta_hi, double tol = 1e-10);

}  // namespace nematic
