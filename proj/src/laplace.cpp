#include "nematic/laplace.hpp"

#include <cmath>
#include <stdexcept>

namespace nematic {

namespace {

constexpr double kHalfPi = 0.5 * kPi;

void require(const LocalData& d, double beta) {
  if (!(d.f2 > 0.0)) throw std::invalid_argument("Laplace expansion needs f''(0) > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("Laplace expansion needs beta > 0");
}

double d1(const AngularFunction& f, double h) {
  return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

double d2(const AngularFunction& f, double h) {
  return (-f(2 * h) + 16 * f(h) - 30 * f(0.0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
}

double d3(const AngularFunction& f, double h) {
  return (-f(3 * h) + 8 * f(2 * h) - 13 * f(h) + 13 * f(-h) - 8 * f(-2 * h) + f(-3 * h)) /
         (8 * h * h * h);
}

struct TiltedSums {
  double z = 0.0;
  std::vector<double> weights;  // normalized Boltzmann weights per node
  std::vector<double> thetas;
};

TiltedSums tilt(const AngularFunction& f, double beta, const QuadratureRule& rule) {
  TiltedSums t;
  const double f0 = f(0.0);
  t.weights.resize(rule.order());
  t.thetas.resize(rule.order());
  for (std::size_t i = 0; i < rule.order(); ++i) {
    const double theta = kHalfPi * rule.nodes[i];
    const double e = std::exp(-beta * (f(theta) - f0));
    if (!std::isfinite(e))
      throw NumericalDomainError("tilted_expectation: exponent overflow; is theta=0 the minimum?");
    t.thetas[i] = theta;
    t.weights[i] = rule.weights[i] * e * std::sin(theta);
    t.z += t.weights[i];
  }
  for (double& w : t.weights) w /= t.z;
  return t;
}

nlohmann::json vec(const std::vector<double>& v) { return nlohmann::json(v); }

}  // namespace

LocalData local_data(const AngularFunction& f, const AngularFunction& g) {
  constexpr double kStep = 1e-4;
  constexpr double kStep3 = 5e-3;
  return {f(0.0), d2(f, kStep), d3(f, kStep3), g(0.0), d1(g, kStep), d2(g, kStep)};
}

double laplace_partition(const LocalData& d, double beta) {
  require(d, beta);
  const double lead = 1.0 / (d.f2 * beta);
  const double next = 0.5 * std::sqrt(kHalfPi) * d.f3 / std::pow(d.f2, 2.5) * std::pow(beta, -1.5);
  return std::exp(-beta * d.f0) * (lead - next);
}

double laplace_expectation(const LocalData& d, double beta) {
  require(d, beta);
  const double half = std::sqrt(kHalfPi) * d.g1 / std::sqrt(d.f2);
  const double one = d.g2 / d.f2 + (3.0 * kPi - 16.0) / 12.0 * d.g1 * d.f3 / (d.f2 * d.f2);
  return d.g0 + half / std::sqrt(beta) + one / beta;
}

QuadratureRule laplace_rule() { return reflected(graded_rule(24, 40, 0.5)); }

double tilted_expectation(const AngularFunction& f, const AngularFunction& g, double beta,
                          const QuadratureRule& rule) {
  const TiltedSums t = tilt(f, beta, rule);
  double acc = 0.0;
  for (std::size_t i = 0; i < t.weights.size(); ++i) acc += t.weights[i] * g(t.thetas[i]);
  return acc;
}

double tilted_covariance(const AngularFunction& f, const AngularFunction& g,
                         const AngularFunction& h, double beta, const QuadratureRule& rule) {
  const TiltedSums t = tilt(f, beta, rule);
  double mg = 0.0;
  double mh = 0.0;
  for (std::size_t i = 0; i < t.weights.size(); ++i) {
    mg += t.weights[i] * g(t.thetas[i]);
    mh += t.weights[i] * h(t.thetas[i]);
  }
  // centered second pass: the covariance is many orders below <g><h> at large beta
  double cov = 0.0;
  for (std::size_t i = 0; i < t.weights.size(); ++i)
    cov += t.weights[i] * (g(t.thetas[i]) - mg) * (h(t.thetas[i]) - mh);
  return cov;
}

RateDiagnostics laplace_rate_check(const AngularFunction& f, const AngularFunction& g,
                                   const std::vector<double>& betas, double ratio_lo,
                                   double ratio_hi) {
  if (betas.size() < 2) throw std::invalid_argument("laplace_rate_check: need at least two betas");
  const LocalData data = local_data(f, g);
  RateDiagnostics out{betas, {}, {}, {}, {}, ratio_lo, ratio_hi, true};
  for (double beta : betas) {
    const double num = tilted_expectation(f, g, beta);
    const double asym = laplace_expectation(data, beta);
    out.numeric.push_back(num);
    out.expansion.push_back(asym);
    out.errors.push_back(std::abs(num - asym));
  }
  for (std::size_t k = 0; k + 1 < out.errors.size(); ++k) {
    const double r = out.errors[k] / out.errors[k + 1];
    out.ratios.push_back(r);
    if (!(r >= ratio_lo && r <= ratio_hi)) out.pass = false;
  }
  return out;
}

nlohmann::json RateDiagnostics::to_json() const {
  return {{"betas", vec(betas)},      {"numeric", vec(numeric)}, {"expansion", vec(expansion)},
          {"errors", vec(errors)},    {"ratios", vec(ratios)},   {"ratio_bounds", {ratio_lo, ratio_hi}},
          {"pass", pass}};
}

CumulantDiagnostics cumulant_decay_check(const AngularFunction& g, const AngularFunction& h,
                                         const AngularFunction& f,
                                         const std::vector<double>& betas) {
  if (betas.size() < 3) throw std::invalid_argument("cumulant_decay_check: need at least 3 betas");
  for (std::size_t k = 0; k + 1 < betas.size(); ++k)
    if (!(betas[k + 1] > betas[k]))
      throw std::invalid_argument("cumulant_decay_check: betas must increase");

  CumulantDiagnostics out;
  out.betas = betas;
  out.h_flat = std::abs(local_data(f, h).g1) < 1e-6;
  for (double beta : betas) {
    const double c = tilted_covariance(f, g, h, beta);
    out.covariance.push_back(c);
    out.scaled_half.push_back(std::sqrt(beta) * c);
    out.scaled_one.push_back(beta * c);
  }
  auto decreasing_tail = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    return std::abs(v[n - 1]) < std::abs(v[n - 2]) && std::abs(v[n - 2]) < std::abs(v[n - 3]);
  };
  out.pass_half = decreasing_tail(out.scaled_half);
  out.pass_one = decreasing_tail(out.scaled_one);
  out.pass = out.pass_half && (!out.h_flat || out.pass_one);
  return out;
}

nlohmann::json CumulantDiagnostics::to_json() const {
  return {{"betas", vec(betas)},
          {"covariance", vec(covariance)},
          {"scaled_half", vec(scaled_half)},
          {"scaled_one", vec(scaled_one)},
          {"h_flat", h_flat},
          {"pass_half", pass_half},
          {"pass_one", pass_one},
          {"pass", pass}};
}

}  // namespace nematic
