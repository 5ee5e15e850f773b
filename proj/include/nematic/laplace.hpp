#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "nematic/numerics.hpp"

namespace nematic {

/// A smooth function of the polar angle theta. Must be defined in a small
/// neighborhood of 0 on both sides, so that derivatives at 0 can be taken
/// by central differences.
using AngularFunction = std::function<double(double)>;

/// Values and derivatives at the minimizer theta = 0 of the exponent f and of
/// the observable g.
struct LocalData {
  double f0 = 0.0;
  double f2 = 0.0;  // f''(0) > 0
  double f3 = 0.0;
  double g0 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
};

/// Central finite differences at 0: fourth order with step 1e-4 for the first
/// two derivatives, fourth order with step 5e-3 for f'''(0).
LocalData local_data(const AngularFunction& f, const AngularFunction& g);

/// int_0^{pi/2} e^{-beta f} sin(theta) dtheta
///   ~ e^{-beta f0} [ 1/(f2 beta) - (1/2) sqrt(pi/2) f3 / f2^{5/2} beta^{-3/2} ].
/// Throws std::invalid_argument if f2 <= 0 or beta <= 0.
double laplace_partition(const LocalData& data, double beta);

/// <g> under e^{-beta f} sin(theta) dtheta
///   ~ g0 + sqrt(pi/2) g1 / sqrt(f2) beta^{-1/2}
///        + [ g2 / f2 + (3 pi - 16)/12 g1 f3 / f2^2 ] beta^{-1}.
double laplace_expectation(const LocalData& data, double beta);

/// Composite rule on theta in [0, pi/2] (as t = 2 theta / pi in [0,1]) graded
/// toward theta = 0.
QuadratureRule laplace_rule();

/// Numerical <g> under e^{-beta f} sin(theta) dtheta on [0, pi/2].
double tilted_expectation(const AngularFunction& f, const AngularFunction& g, double beta,
                          const QuadratureRule& rule = laplace_rule());

/// Numerical <g h> - <g><h>.
double tilted_covariance(const AngularFunction& f, const AngularFunction& g,
                         const AngularFunction& h, double beta,
                         const QuadratureRule& rule = laplace_rule());

/// Truncation error of laplace_expectation across beta, and its decay ratios.
struct RateDiagnostics {
  std::vector<double> betas;
  std::vector<double> numeric;
  std::vector<double> expansion;
  std::vector<double> errors;
  std::vector<double> ratios;  // errors[k] / errors[k+1]
  double ratio_lo;
  double ratio_hi;
  bool pass;  // every ratio in [ratio_lo, ratio_hi]

  [[nodiscard]] nlohmann::json to_json() const;
};

RateDiagnostics laplace_rate_check(const AngularFunction& f, const AngularFunction& g,
                                   const std::vector<double>& betas, double ratio_lo = 6.0,
                                   double ratio_hi = 10.0);

/// Scaled covariances beta^{1/2} cov(g,h) and beta cov(g,h).
struct CumulantDiagnostics {
  std::vector<double> betas;
  std::vector<double> covariance;
  std::vector<double> scaled_half;
  std::vector<double> scaled_one;
  bool h_flat;     // h'(0) = 0 within 1e-6
  bool pass_half;  // |beta^{1/2} cov| decreasing over the last three betas
  bool pass_one;   // |beta cov| decreasing over the last three betas (checked when h_flat)
  bool pass;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws std::invalid_argument unless betas is strictly increasing with at least three entries.
CumulantDiagnostics cumulant_decay_check(const AngularFunction& g, const AngularFunction& h,
                                         const AngularFunction& f,
                                         const std::vector<double>& betas);

}  // namespace nematic
