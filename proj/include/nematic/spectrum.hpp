#pragma once

#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "nematic/numerics.hpp"
#include "nematic/potential.hpp"

namespace nematic {

/// Linearization of the self-consistency map around the isotropic state.
///
/// K acts on degree-l zonal harmonics as multiplication by
/// lambda_l = -c~_l / (2l + 1), where c~_l are the Legendre coefficients of the
/// deviation kernel (U without its constant mean). l = 0 is excluded: constant
/// perturbations do not preserve mass.
struct SpectrumReport {
  std::map<int, double> eigenvalues;
  double norm_k = 0.0;
  std::map<int, double> bifurcation_betas;  // 1 / lambda_l for lambda_l > 0
  double uniqueness_beta = 0.0;             // 1 / (2 ||U||_inf)
  double no_bifurcation_beta = 0.0;         // 1 / ||K||, +inf when K = 0
  /// Degrees whose positive eigenvalue is shared with another degree; a
  /// bifurcation there is not from a simple eigenvalue and is left unclassified.
  std::vector<std::vector<int>> degenerate_degrees;
  /// Leading (smallest-beta) simple bifurcation, when one exists.
  std::optional<int> critical_degree;
  std::optional<double> critical_beta;
  std::optional<double> transcriticality_b;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Closed-form spectrum; B is filled in by `analyze_spectrum`.
SpectrumReport k_eigenvalues(const AxisymmetricPotential& potential);

/// Eigenvalues (descending) of K discretized on the rule nodes: the azimuthally
/// integrated kernel -(1/2 pi) int_0^{2 pi} U(u u' + s s' cos phi) dphi times the
/// polar weights, on the mean-zero subspace. The phi integral uses
/// `azimuth_points` equally spaced points, exact for U of degree < azimuth_points.
std::vector<double> discretized_k_eigenvalues(const AxisymmetricPotential& potential,
                                              const QuadratureRule& rule, int azimuth_points = 64);

/// 2 P_l(cos theta) at the rule nodes: mu* = 3 cos^2 theta - 1 for l = 2.
/// Throws std::invalid_argument for odd l or l < 2.
std::vector<double> critical_eigenvector(const QuadratureRule& rule, int l);

/// B = -beta*^2 |M|^-1 int_M mu*(m) (int_M U(m,m') mu*(m') dm')^2 dm by quadrature.
double transcriticality_coefficient(const AxisymmetricPotential& potential, double beta_star,
                                    const QuadratureRule& rule, std::span<const double> mu_star);

/// k_eigenvalues plus B at the leading simple bifurcation.
SpectrumReport analyze_spectrum(const AxisymmetricPotential& potential, const QuadratureRule& rule);

}  // namespace nematic
