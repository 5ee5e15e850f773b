#include "nematic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nematic {

SpectrumReport k_eigenvalues(const AxisymmetricPotential& potential) {
  SpectrumReport report;
  const AxisymmetricPotential deviation = potential.deviation();
  for (const auto& [l, c] : deviation.coefficients()) {
    const double lambda = -c / (2.0 * l + 1.0);
    report.eigenvalues[l] = lambda;
    report.norm_k = std::max(report.norm_k, std::abs(lambda));
    if (lambda > 0.0) report.bifurcation_betas[l] = (2.0 * l + 1.0) / -c;
  }
  const double sup = potential.sup_norm();
  report.uniqueness_beta =
      sup > 0.0 ? 1.0 / (2.0 * sup) : std::numeric_limits<double>::infinity();
  report.no_bifurcation_beta =
      report.norm_k > 0.0 ? 1.0 / report.norm_k : std::numeric_limits<double>::infinity();

  // group positive eigenvalues that coincide to rounding
  std::vector<bool> used(17, false);
  for (auto it = report.bifurcation_betas.begin(); it != report.bifurcation_betas.end(); ++it) {
    if (used[it->first]) continue;
    std::vector<int> group{it->first};
    for (auto jt = std::next(it); jt != report.bifurcation_betas.end(); ++jt) {
      if (std::abs(jt->second - it->second) <= 1e-12 * std::abs(it->second)) {
        group.push_back(jt->first);
        used[jt->first] = true;
      }
    }
    if (group.size() > 1) report.degenerate_degrees.push_back(group);
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& [l, b] : report.bifurcation_betas) {
    if (b < best) {
      best = b;
      report.critical_degree = l;
      report.critical_beta = b;
    }
  }
  if (report.critical_degree) {
    for (const auto& group : report.degenerate_degrees) {
      for (int l : group) {
        if (l == *report.critical_degree) {
          report.critical_degree.reset();
          report.critical_beta.reset();
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<double> discretized_k_eigenvalues(const AxisymmetricPotential& potential,
                                              const QuadratureRule& rule, int azimuth_points) {
  if (azimuth_points < 1) throw std::invalid_argument("discretized_k_eigenvalues: azimuth_points < 1");
  const auto n = static_cast<Eigen::Index>(rule.order());
  Eigen::VectorXd root_w(n);
  std::vector<double> s(rule.order());
  for (Eigen::Index i = 0; i < n; ++i) {
    root_w(i) = std::sqrt(rule.weights[i]);
    s[i] = std::sqrt((1.0 - rule.nodes[i]) * (1.0 + rule.nodes[i]));
  }
  // symmetric form W^{1/2} k W^{1/2} of the integral operator in u
  Eigen::MatrixXd a(n, n);
  const double dphi = kTwoPi / azimuth_points;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double k = 0.0;
      for (int p = 0; p < azimuth_points; ++p)
        k += potential(rule.nodes[i] * rule.nodes[j] + s[i] * s[j] * std::cos(p * dphi));
      k *= -dphi / kTwoPi;
      a(i, j) = a(j, i) = root_w(i) * k * root_w(j);
    }
  }
  // restrict to perturbations of zero mass: project out the constant mode
  const Eigen::VectorXd e = root_w / root_w.norm();
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - e * e.transpose();
  const Eigen::MatrixXd restricted = proj * a * proj;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(restricted, Eigen::EigenvaluesOnly);
  std::vector<double> out(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<double> critical_eigenvector(const QuadratureRule& rule, int l) {
  if (l < 2 || l % 2 != 0)
    throw std::invalid_argument("critical_eigenvector: degree must be even and >= 2, got " +
                                std::to_string(l));
  std::vector<double> mu(rule.order());
  for (std::size_t i = 0; i < rule.order(); ++i) mu[i] = 2.0 * legendre_p(l, rule.nodes[i]);
  return mu;
}

double transcriticality_coefficient(const AxisymmetricPotential& potential, double beta_star,
                                    const QuadratureRule& rule, std::span<const double> mu_star) {
  if (mu_star.size() != rule.order())
    throw std::invalid_argument("transcriticality_coefficient: eigenvector size mismatch");
  // H_mu(u) = int_M U(m,m') mu(m') dm' = sum_l c_l (2 pi int_0^1 P_l mu du') P_l(u)
  std::map<int, double> field;
  for (const auto& [l, c] : potential.coefficients()) {
    double moment = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i)
      moment += rule.weights[i] * mu_star[i] * legendre_any(l, rule.nodes[i]);
    field[l] = c * kTwoPi * moment;
  }
  double integral = 0.0;  // int_M mu H^2 dm
  for (std::size_t i = 0; i < rule.order(); ++i) {
    double h = 0.0;
    for (const auto& [l, a] : field) h += a * legendre_any(l, rule.nodes[i]);
    integral += rule.weights[i] * mu_star[i] * h * h;
  }
  integral *= kTwoPi;
  return -beta_star * beta_star / kTwoPi * integral;
}

SpectrumReport analyze_spectrum(const AxisymmetricPotential& potential, const QuadratureRule& rule) {
  SpectrumReport report = k_eigenvalues(potential);
  if (report.critical_degree) {
    const auto mu = critical_eigenvector(rule, *report.critical_degree);
    report.transcriticality_b =
        transcriticality_coefficient(potential, *report.critical_beta, rule, mu);
  } else if (potential.is_constant()) {
    // the deviation kernel vanishes: no quadratic coupling at all
    report.transcriticality_b = 0.0;
  }
  return report;
}

nlohmann::json SpectrumReport::to_json() const {
  auto keyed = [](const std::map<int, double>& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [l, v] : m) j[std::to_string(l)] = v;
    return j;
  };
  auto finite_or_null = [](double v) -> nlohmann::json {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["eigenvalues"] = keyed(eigenvalues);
  j["norm_k"] = norm_k;
  j["bifurcation_betas"] = keyed(bifurcation_betas);
  j["uniqueness_beta"] = finite_or_null(uniqueness_beta);
  j["no_bifurcation_beta"] = finite_or_null(no_bifurcation_beta);
  j["transcriticality_B"] =
      transcriticality_b ? nlohmann::json(*transcriticality_b) : nlohmann::json(nullptr);
  j["critical_degree"] = critical_degree ? nlohmann::json(*critical_degree) : nlohmann::json(nullptr);
  j["degenerate_degrees"] = degenerate_degrees;
  return j;
}

}  // namespace nematic
