#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nematic/density.hpp"
#include "nematic/numerics.hpp"

namespace nematic {

/// Two-body angular interaction U(m, m') = sum_l c_l P_l(cos gamma), even l only.
class AxisymmetricPotential {
 public:
  /// Throws std::invalid_argument on odd, negative or out-of-range degrees and
  /// on non-finite coefficients. Zero coefficients are dropped.
  AxisymmetricPotential(std::map<int, double> coeffs, std::string label);

  /// w [1 - P_2(cos gamma)], w > 0.
  static AxisymmetricPotential maier_saupe(double w);

  /// {"type":"maier-saupe","w":1.0} or {"type":"legendre","coeffs":{"0":1.0,"2":-1.0}}.
  static AxisymmetricPotential from_json(const nlohmann::json& desc);
  [[nodiscard]] nlohmann::json to_json() const;

  [[nodiscard]] double operator()(double cos_gamma) const;

  [[nodiscard]] const std::map<int, double>& coefficients() const noexcept { return coeffs_; }
  [[nodiscard]] double coefficient(int l) const;
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] int max_degree() const noexcept;

  /// int over the half-sphere of U(m, .) in m'; equals 2 pi c_0 for every m.
  [[nodiscard]] double half_sphere_mean() const noexcept { return kTwoPi * coefficient(0); }

  /// sup over cos gamma in [0,1] of |U|; the kernel is even so this is the L-infinity norm.
  [[nodiscard]] double sup_norm() const;

  /// U minus its (constant) half-sphere average divided by |M|, i.e. without c_0.
  [[nodiscard]] AxisymmetricPotential deviation() const;

  /// True when only c_0 is present.
  [[nodiscard]] bool is_constant() const noexcept;

 private:
  std::map<int, double> coeffs_;
  std::string label_;
};

/// Result of projecting a tabulated kernel onto even Legendre polynomials.
struct ProjectedPotential {
  AxisymmetricPotential potential;
  double truncation_residual;  // sup over cos gamma in [-1,1] of |U - expansion|
};

/// Projects U(cos gamma) onto even degrees 0..max_degree by Gauss quadrature on
/// [-1,1]. Any odd part of the kernel is discarded and shows up in the residual.
ProjectedPotential project_kernel(const std::function<double(double)>& kernel, std::string label,
                                  int max_degree = kMaxLegendreDegree);

struct ConstancyCheck {
  bool constant;
  double max_deviation;
  double mean;  // average of the probed values
};

/// Evaluates m -> int_M U(m, m') dm' for probe orientations m and reports the
/// spread. The azimuth is integrated analytically, the polar angle by `rule`.
ConstancyCheck check_constant_mean(const AxisymmetricPotential& potential,
                                   const QuadratureRule& rule, double tol);

/// Mean-field potential H_nu(theta) = int_M U(m, m') nu(m') dm' at the nodes of nu.
struct EffectivePotential {
  std::vector<double> values;
  std::map<int, double> legendre_moments;  // <P_l>_nu for every degree in U
  std::map<int, double> field;             // H = sum_l field[l] P_l(u)

  [[nodiscard]] double at(double u) const;
  [[nodiscard]] double min_value() const;

  /// Minimum of the Legendre expansion on a grid `refine` times finer than the
  /// node set, including both endpoints.
  [[nodiscard]] double dense_minimum(const QuadratureRule& rule, int refine = 10) const;

  /// True when the dense sampling has one strict local minimum on [0,1].
  [[nodiscard]] bool has_unique_minimum(int samples = 2001) const;
};

/// Throws std::invalid_argument when nu is not normalized.
EffectivePotential effective_potential(const AxisymmetricPotential& potential,
                                       const OrientationDensity& nu);

}  // namespace nematic
