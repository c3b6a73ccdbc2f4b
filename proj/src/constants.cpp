#include "bbm/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bbm/errors.hpp"
#include "bbm/geometry.hpp"
#include "bbm/heisenberg.hpp"

namespace bbm {
namespace {

void require_samples(std::size_t samples) {
  if (samples < 1000) throw DomainError("Monte-Carlo constants need at least 1000 samples");
}

void require_dimension(int n) {
  if (n < 1 || n > kMaxDimension) throw DomainError("dimension must be in [1, 8]");
}

}  // namespace

double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == std::floor(p) && p >= 0.0 && p <= 16.0) {
    double result = 1.0;
    for (int k = static_cast<int>(p); k > 0; --k) result *= a;
    return result;
  }
  return std::pow(a, p);
}

double c_euclidean_closed(double p, int n) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("c_euclidean_closed: p must be > 1");
  if (n < 1) throw DomainError("c_euclidean_closed: N must be >= 1");
  // Log-gamma keeps large p from overflowing.
  const double log_c = std::lgamma(0.5 * (p + 1.0)) + std::lgamma(0.5 * n + 1.0) - std::lgamma(0.5) -
                       std::lgamma(0.5 * (n + p) + 1.0);
  if (p + n < 100.0)
    return std::tgamma(0.5 * (p + 1.0)) * std::tgamma(0.5 * n + 1.0) /
           (std::tgamma(0.5) * std::tgamma(0.5 * (n + p) + 1.0));
  return std::exp(log_c);
}

EnergyEstimate c_euclidean_mc(double p, int n, std::size_t samples, const Stream& rng, const Execution& exec,
                              const Eigen::VectorXd& direction) {
  require_samples(samples);
  require_dimension(n);
  Eigen::VectorXd v = Eigen::VectorXd::Unit(n, 0);
  if (direction.size() != 0) {
    if (direction.size() != n || std::abs(direction.norm() - 1.0) > 1e-12)
      throw DomainError("c_euclidean_mc: direction must be a unit vector of R^N");
    v = direction;
  }
  const MeanAccumulator acc = monte_carlo_mean(samples, rng, exec, [&](Stream& local) {
    return abs_pow(sample_euclidean_ball(n, 1.0, local).dot(v), p);
  });
  return EnergyEstimate::from(acc, rng.seed());
}

EnergyEstimate c_heisenberg_mc(double p, std::size_t samples, const Stream& rng, const Execution& exec,
                               const Eigen::Vector2d& direction) {
  require_samples(samples);
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw DomainError("c_heisenberg_mc: direction must be a unit horizontal vector");
  const MeanAccumulator acc = monte_carlo_mean(samples, rng, exec, [&](Stream& local) {
    const heisenberg::HPoint z = heisenberg::sample_unit_ball(local);
    return abs_pow(direction[0] * z[0] + direction[1] * z[1], p);
  });
  return EnergyEstimate::from(acc, rng.seed());
}

double radial_moment(double p, int n) {
  if (!(p >= 0.0)) throw DomainError("radial_moment: p must be >= 0");
  if (n < 1) throw DomainError("radial_moment: N must be >= 1");
  return n / (n + p);
}

EnergyEstimate radial_moment_mc(double p, int n, std::size_t samples, const Stream& rng, const Execution& exec) {
  require_samples(samples);
  require_dimension(n);
  const MeanAccumulator acc = monte_carlo_mean(
      samples, rng, exec, [&](Stream& local) { return abs_pow(sample_euclidean_ball(n, 1.0, local).norm(), p); });
  return EnergyEstimate::from(acc, rng.seed());
}

double k_bbm(double p, int n) { return c_euclidean_closed(p, n) / radial_moment(p, n); }

EnergyEstimate k_sphere_mc(double p, int n, std::size_t samples, const Stream& rng, const Execution& exec) {
  require_samples(samples);
  require_dimension(n);
  const MeanAccumulator acc = monte_carlo_mean(samples, rng, exec, [&](Stream& local) {
    Eigen::VectorXd g(n);
    double norm = 0.0;
    while (norm == 0.0) {
      for (int i = 0; i < n; ++i) g[i] = local.normal();
      norm = g.norm();
    }
    return abs_pow(g[0] / norm, p);
  });
  return EnergyEstimate::from(acc, rng.seed());
}

}  // namespace bbm
