#pragma once

#include <vector>

#include "nematic/density.hpp"
#include "nematic/numerics.hpp"
#include "nematic/potential.hpp"

namespace nematic {

/// nu -> exp(-beta H_nu) / int_M exp(-beta H_nu).
///
/// The exponent is shifted by min H before exponentiating; the ratio does not
/// change and beta in the hundreds stays finite.
OrientationDensity sce_map(double beta, const AxisymmetricPotential& potential,
                           const OrientationDensity& nu);

struct PicardOptions {
  double damping = 0.5;  // alpha in (0,1]
  double tol = 1e-10;    // sup-norm residual
  int max_iter = 20000;
};

struct FixedPointResult {
  OrientationDensity density;
  double residual;  // sup |nu - sce_map(nu)| at the returned density
  int iterations;
  bool converged;
  double order_parameter;
};

/// Damped Picard iteration nu <- (1 - alpha) nu + alpha sce_map(nu).
/// Non-convergence is reported through `converged`, never thrown.
FixedPointResult solve_density(double beta, const AxisymmetricPotential& potential,
                               const OrientationDensity& seed, const PicardOptions& options = {});

/// xi = <sin^2 theta>_nu = 2 pi int_0^1 nu(u) (1 - u^2) du.
double order_parameter(const OrientationDensity& nu);

/// A scalar root of xi = F(beta, xi).
struct ScalarRoot {
  double xi;
  double dF_dxi;
  bool stable;    // dF_dxi < 1
  bool oblate;    // xi > 2/3: reported, never physical
  double residual;  // |xi - F(beta, xi)|
};

struct ScanOptions {
  int scan_points = 2000;
  double tol = 1e-13;  // bisection width in xi
};

/// Order-parameter reduction of the self-consistency equation for the
/// Maier-Saupe potential with coupling w:
///
///   F(beta, xi) = <sin^2 theta> under exp(-beta w (1 - 3 xi / 2)(1 - P_2(cos theta))).
///
/// The model depends on beta and w only through beta * w.
class ScalarReduction {
 public:
  static constexpr double kIsotropicXi = 2.0 / 3.0;

  explicit ScalarReduction(double w = 1.0);
  ScalarReduction(double w, QuadratureRule rule);

  /// Composite rule resolving the pole layer up to beta ~ 1e6.
  static QuadratureRule default_rule();

  [[nodiscard]] double coupling() const noexcept { return w_; }
  [[nodiscard]] const QuadratureRule& rule() const noexcept { return rule_; }

  [[nodiscard]] double F(double beta, double xi) const;
  [[nodiscard]] double G(double beta, double xi) const { return xi - F(beta, xi); }

  /// Closed form dF/dxi = (9/4) beta w Var(sin^2 theta) under the tilted weight.
  [[nodiscard]] double dF_dxi(double beta, double xi) const;

  /// All roots of G(beta, .) on [0,1], ascending. The isotropic root 2/3 is
  /// always present; the others come from a scan of G / (xi - 2/3) with
  /// bisection, plus a check of every discrete extremum so that a close root
  /// pair near a fold is not skipped between two scan points.
  [[nodiscard]] std::vector<ScalarRoot> solve(double beta, const ScanOptions& options = {}) const;

  /// Only the roots different from 2/3 (the nematic ones), ascending.
  [[nodiscard]] std::vector<ScalarRoot> nematic_roots(double beta,
                                                      const ScanOptions& options = {}) const;

  /// Root of G(beta, .) in [lo, hi] by bisection; requires a sign change.
  [[nodiscard]] double bisect(double beta, double lo, double hi, double tol = 1e-14) const;

  [[nodiscard]] ScalarRoot classify(double beta, double xi) const;

 private:
  struct Moments {
    double mean;
    double variance;
  };
  [[nodiscard]] Moments tilted_moments(double beta, double xi) const;
  [[nodiscard]] double deflated(double beta, double xi) const;

  double w_;
  QuadratureRule rule_;
};

/// The Boltzmann density whose scalar reduction sits at order parameter xi:
/// nu proportional to exp(beta w <P_2> P_2(u)) with <P_2> = 1 - 3 xi / 2.
OrientationDensity density_for_order_parameter(const QuadratureRule& rule, double beta, double w,
                                               double xi);

}  // namespace nematic
