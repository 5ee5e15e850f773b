#include "nematic/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace nematic {

std::array<double, 3> Orientation::direction() const {
  const double s = std::sqrt(std::max(0.0, (1.0 - u) * (1.0 + u)));
  return {s * std::cos(phi), s * std::sin(phi), u};
}

namespace {

inline double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double quadratic_form(const std::array<double, 9>& s, const std::array<double, 3>& m) {
  double acc = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) acc += m[r] * s[3 * r + c] * m[c];
  return acc;
}

inline void add_outer(std::array<double, 9>& s, const std::array<double, 3>& m, double sign) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s[3 * r + c] += sign * m[r] * m[c];
}

}  // namespace

ParticleSystem::ParticleSystem(std::vector<Orientation> orientations, double beta,
                               AxisymmetricPotential potential)
    : orientations_(std::move(orientations)), beta_(beta), potential_(std::move(potential)) {
  if (orientations_.size() < 2)
    throw std::invalid_argument("ParticleSystem: need at least two particles");
  if (!(beta_ >= 0.0) || !std::isfinite(beta_))
    throw std::invalid_argument("ParticleSystem: beta must be finite and nonnegative");
  for (const auto& o : orientations_) {
    if (!(o.u >= 0.0 && o.u <= 1.0) || !(o.phi >= 0.0 && o.phi < kTwoPi))
      throw std::invalid_argument("ParticleSystem: orientation outside u in [0,1], phi in [0,2pi)");
  }
  quadrupolar_ = potential_.max_degree() <= 2;
  refresh();
}

ParticleSystem ParticleSystem::random(std::size_t n, double beta, AxisymmetricPotential potential,
                                      Rng& rng) {
  std::vector<Orientation> o(n);
  for (auto& x : o) {
    x.u = unit_uniform(rng);
    x.phi = kTwoPi * unit_uniform(rng);
  }
  return ParticleSystem(std::move(o), beta, std::move(potential));
}

void ParticleSystem::refresh() {
  directions_.resize(orientations_.size());
  moment_.fill(0.0);
  for (std::size_t i = 0; i < orientations_.size(); ++i) {
    directions_[i] = orientations_[i].direction();
    add_outer(moment_, directions_[i], 1.0);
  }
}

double ParticleSystem::total_energy() const {
  const double n = static_cast<double>(size());
  if (quadrupolar_) {
    // sum_{i<j} (m_i.m_j)^2 = (tr S^2 - N) / 2
    double tr = 0.0;
    for (int k = 0; k < 9; ++k) tr += moment_[k] * moment_[k];
    const double c0 = potential_.coefficient(0);
    const double c2 = potential_.coefficient(2);
    const double pairs = 0.5 * n * (n - 1.0);
    return (pairs * (c0 - 0.5 * c2) + 1.5 * c2 * 0.5 * (tr - n)) / (n - 1.0);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) acc += potential_(dot3(directions_[i], directions_[j]));
  return acc / (n - 1.0);
}

double ParticleSystem::delta_energy(std::size_t i, const Orientation& proposal) const {
  const auto m_new = proposal.direction();
  const auto& m_old = directions_[i];
  const double scale = 1.0 / (static_cast<double>(size()) - 1.0);
  if (quadrupolar_) {
    // sum_{j != i} (m.m_j)^2 = m^T S m - (m.m_i)^2
    const double c2 = potential_.coefficient(2);
    const double overlap = dot3(m_new, m_old);
    const double after = quadratic_form(moment_, m_new) - overlap * overlap;
    const double before = quadratic_form(moment_, m_old) - 1.0;
    return scale * 1.5 * c2 * (after - before);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j == i) continue;
    acc += potential_(dot3(m_new, directions_[j])) - potential_(dot3(m_old, directions_[j]));
  }
  return scale * acc;
}

void ParticleSystem::move(std::size_t i, const Orientation& to) {
  add_outer(moment_, directions_[i], -1.0);
  orientations_[i] = to;
  directions_[i] = to.direction();
  add_outer(moment_, directions_[i], 1.0);
}

SweepStats metropolis_sweep(ParticleSystem& system, double width, Rng& rng) {
  if (!(width > 0.0)) throw std::invalid_argument("metropolis_sweep: proposal width must be positive");
  SweepStats stats;
  const double beta = system.beta();
  for (std::size_t i = 0; i < system.size(); ++i) {
    const Orientation& cur = system.orientations()[i];
    double u = cur.u + width * (2.0 * unit_uniform(rng) - 1.0);
    while (u < 0.0 || u > 1.0) u = (u < 0.0) ? -u : 2.0 - u;
    double phi = std::fmod(cur.phi + kPi * width * (2.0 * unit_uniform(rng) - 1.0), kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;
    const Orientation proposal{u, phi};
    const double dv = system.delta_energy(i, proposal);
    const double r = unit_uniform(rng);
    ++stats.proposed;
    if (dv <= 0.0 || r < std::exp(-beta * dv)) {
      system.move(i, proposal);
      ++stats.accepted;
    }
  }
  system.refresh();
  return stats;
}

NematicFrame nematic_frame(const ParticleSystem& system) {
  Eigen::Matrix3d s;
  const auto& m = system.second_moment();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s(r, c) = m[3 * r + c];
  s /= static_cast<double>(system.size());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig;
  eig.computeDirect(s);
  const Eigen::Vector3d axis = eig.eigenvectors().col(2);  // eigenvalues ascend
  return {1.0 - eig.eigenvalues()(2), {axis(0), axis(1), axis(2)}};
}

double order_parameter_about(const ParticleSystem& system, const std::array<double, 3>& axis) {
  return 1.0 - quadratic_form(system.second_moment(), axis) / static_cast<double>(system.size());
}

double integrated_autocorrelation_time(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 4) return 0.5;
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);
  auto autocov = [&](std::size_t t) {
    double acc = 0.0;
    for (std::size_t k = 0; k + t < n; ++k) acc += (series[k] - mean) * (series[k + t] - mean);
    return acc / static_cast<double>(n - t);
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return 0.5;
  double tau = 0.5;
  const std::size_t max_window = n / 4;
  for (std::size_t w = 1; w <= max_window; ++w) {
    tau += autocov(w) / c0;
    if (static_cast<double>(w) >= 5.0 * tau) break;
  }
  return std::max(tau, 0.5);
}

McEstimate estimate_order_parameter(std::size_t n, double beta, const AxisymmetricPotential& potential,
                                    const McOptions& options) {
  if (!(options.n_sweeps > options.n_burnin))
    throw std::invalid_argument("estimate_order_parameter: need n_sweeps > n_burnin");
  Rng rng(options.seed);
  ParticleSystem system = ParticleSystem::random(n, beta, potential, rng);

  double width = options.initial_width;
  SweepStats window;
  for (std::size_t s = 0; s < options.n_burnin; ++s) {
    const SweepStats st = metropolis_sweep(system, width, rng);
    window.proposed += st.proposed;
    window.accepted += st.accepted;
    if ((s + 1) % options.tune_interval == 0) {
      const double rate = static_cast<double>(window.accepted) / static_cast<double>(window.proposed);
      width *= std::clamp(rate / 0.5, 0.5, 2.0);
      width = std::clamp(width, 1e-4, 1.0);
      window = {};
    }
  }

  const std::size_t samples = options.n_sweeps - options.n_burnin;
  std::vector<double> series;
  series.reserve(samples);
  SweepStats production;
  std::array<double, 3> axis = nematic_frame(system).director;
  for (std::size_t s = 0; s < samples; ++s) {
    const SweepStats st = metropolis_sweep(system, width, rng);
    production.proposed += st.proposed;
    production.accepted += st.accepted;
    series.push_back(order_parameter_about(system, axis));
    axis = nematic_frame(system).director;
  }

  McEstimate est;
  est.n_particles = n;
  est.beta = beta;
  est.n_samples = samples;
  est.proposal_width = width;
  est.acceptance_rate =
      static_cast<double>(production.accepted) / static_cast<double>(production.proposed);
  double mean = 0.0;
  for (double x : series) mean += x;
  est.mean = mean / static_cast<double>(samples);

  const std::size_t batches = std::min(options.batches, samples);
  if (batches >= 2) {
    const std::size_t len = samples / batches;
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
      for (std::size_t k = 0; k < len; ++k) means[b] += series[b * len + k];
      means[b] /= static_cast<double>(len);
    }
    double bm = 0.0;
    for (double x : means) bm += x;
    bm /= static_cast<double>(batches);
    double var = 0.0;
    for (double x : means) var += (x - bm) * (x - bm);
    var /= static_cast<double>(batches - 1);
    est.std_error = std::sqrt(var / static_cast<double>(batches));
  }
  est.tau_int = integrated_autocorrelation_time(series);
  est.director = axis;
  if (est.acceptance_rate < 0.2 || est.acceptance_rate > 0.8)
    est.warnings.push_back("acceptance rate " + std::to_string(est.acceptance_rate) +
                           " outside [0.2, 0.8] after tuning");
  return est;
}

std::vector<McEstimate> run_chains(std::size_t n, double beta, const AxisymmetricPotential& potential,
                                   const McOptions& options, std::size_t chains, unsigned jobs) {
  std::vector<McEstimate> out(chains);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(chains, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < chains; c = next++) {
      McOptions o = options;
      o.seed = options.seed + c;
      out[c] = estimate_order_parameter(n, beta, potential, o);
    }
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }
  return out;
}

McEstimate merge_estimates(const std::vector<McEstimate>& chains) {
  if (chains.empty()) throw std::invalid_argument("merge_estimates: no chains");
  if (chains.size() == 1) return chains.front();
  McEstimate m = chains.front();
  double wsum = 0.0;
  double acc = 0.0;
  double acc_rate = 0.0;
  double tau = 0.0;
  std::size_t samples = 0;
  for (const auto& c : chains) {
    if (!(c.std_error > 0.0)) throw std::invalid_argument("merge_estimates: chain without error bar");
    const double w = 1.0 / (c.std_error * c.std_error);
    wsum += w;
    acc += w * c.mean;
    acc_rate += c.acceptance_rate * static_cast<double>(c.n_samples);
    tau += c.tau_int * static_cast<double>(c.n_samples);
    samples += c.n_samples;
    for (const auto& warn : c.warnings) m.warnings.push_back(warn);
  }
  m.mean = acc / wsum;
  m.std_error = std::sqrt(1.0 / wsum);
  m.n_samples = samples;
  m.acceptance_rate = acc_rate / static_cast<double>(samples);
  m.tau_int = tau / static_cast<double>(samples);
  return m;
}

nlohmann::json McEstimate::to_json() const {
  return {{"N", n_particles},
          {"beta", beta},
          {"xi_mean", mean},
          {"xi_stderr", std_error},
          {"tau_int", tau_int},
          {"acceptance", acceptance_rate},
          {"n_samples", n_samples},
          {"proposal_width", proposal_width},
          {"warnings", warnings}};
}

}  // namespace nematic
