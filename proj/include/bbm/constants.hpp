#pragma once

// Tangent-space constants C = ball average of |z . v|^p over the unit ball of
// the tangent (R^N or H^1), and the ball-average kernel normalization K.

#include <Eigen/Core>

#include <cstddef>

#include "bbm/estimate.hpp"
#include "bbm/parallel.hpp"
#include "bbm/random.hpp"

namespace bbm {

/// C_{p,N} = Gamma((p+1)/2) Gamma(N/2+1) / (Gamma(1/2) Gamma((N+p)/2+1)).
/// DomainError unless p > 1 and N >= 1.
double c_euclidean_closed(double p, int n);

/// Monte-Carlo C_{p,N}: mean of |z . v|^p over uniform points of the unit
/// ball, v = e1 unless given. Requires samples >= 1000.
EnergyEstimate c_euclidean_mc(double p, int n, std::size_t samples, const Stream& rng,
                              const Execution& exec = {}, const Eigen::VectorXd& direction = {});

/// Monte-Carlo C_{p,H^1}: mean of |a z1 + b z2|^p over the H^1 unit ball,
/// (a, b) a unit horizontal direction. Requires samples >= 1000.
EnergyEstimate c_heisenberg_mc(double p, std::size_t samples, const Stream& rng, const Execution& exec = {},
                               const Eigen::Vector2d& direction = Eigen::Vector2d(1.0, 0.0));

/// Ball average of |z|^p over the unit ball of R^N: N / (N + p). p >= 0.
double radial_moment(double p, int n);
EnergyEstimate radial_moment_mc(double p, int n, std::size_t samples, const Stream& rng,
                                const Execution& exec = {});

/// K_{p,N} = C_{p,N} / radial_moment(p, N). p > 1.
double k_bbm(double p, int n);

/// Independent estimate of K_{p,N}: mean of |sigma . e1|^p over uniform
/// points of the unit sphere S^{N-1}.
EnergyEstimate k_sphere_mc(double p, int n, std::size_t samples, const Stream& rng, const Execution& exec = {});

/// |x|^p, by repeated multiplication when p is a small integer so that
/// scaling x by a power of two scales the result exactly.
double abs_pow(double x, double p);

}  // namespace bbm
