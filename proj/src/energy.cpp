#include "bbm/energy.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bbm/constants.hpp"
#include "bbm/errors.hpp"
#include "bbm/quadrature.hpp"

namespace bbm {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("quotient: r must be positive");
}

void require_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("quotient: p must be positive");
}

bool trivially_zero(const TestFunction& f) {
  return f.kind() == FunctionKind::constant || f.support().kind == Support::Kind::empty;
}

// min over the support box of the seam lower bound (|y2..y4| or |z2|).
double box_seam_clearance(const Support& s) {
  const Coords& c = s.anchor.coords;
  const Coords& h = s.half_width;
  if (s.anchor.side == glued::Side::euclidean4) {
    double sum = 0.0;
    for (int i = 1; i < 4; ++i) {
      const double gap = std::max(0.0, std::abs(c[i]) - h[i]);
      sum += gap * gap;
    }
    return std::sqrt(sum);
  }
  return std::max(0.0, std::abs(c[1]) - h[1]);
}

Coords uniform_in_box(const Coords& half_width, Stream& rng) {
  Coords w(half_width.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = rng.uniform(-half_width[i], half_width[i]);
  return w;
}

double sphere_surface(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

EnergyEstimate quadrature_result(double value, std::size_t nodes) { return {value, 0.0, nodes, 0}; }

}  // namespace

TangentLabel governing_tangent(const ModelSpace& space, const TestFunction& f) {
  if (space.kind() != SpaceKind::glued || f.kind() != FunctionKind::bump) return space.tangent();
  if (f.center().side == glued::Side::euclidean4) return {TangentLabel::Kind::euclidean, 4};
  return {TangentLabel::Kind::heisenberg1, 4};
}

EnergyEstimate pointwise_quotient(const ModelSpace& space, const TestFunction& f, const SpacePoint& x, double p,
                                  double r, std::size_t samples, const Stream& rng, const Execution& exec) {
  require_positive_radius(r);
  require_exponent(p);
  if (samples == 0) throw DomainError("pointwise_quotient: need at least one sample");
  f.check_space(space);
  space.check(x);
  const double fx = f.value(x);
  const MeanAccumulator acc = monte_carlo_mean(samples, rng, exec, [&](Stream& local) {
    return abs_pow(fx - f.value(sample_ball(space, x, r, local)), p);
  });
  return EnergyEstimate::from(acc, rng.seed(), 1.0 / std::pow(r, p));
}

EnergyEstimate global_quotient(const ModelSpace& space, const TestFunction& f, double p, double r,
                               NestedSamples samples, const Stream& rng, const Execution& exec) {
  require_positive_radius(r);
  require_exponent(p);
  if (samples.outer == 0 || samples.inner == 0) throw DomainError("global_quotient: sample counts must be positive");
  f.check_space(space);
  if (trivially_zero(f)) return {0.0, 0.0, samples.outer * samples.inner, rng.seed()};

  const Support support = f.support();
  const std::size_t inner = samples.inner;
  double region_measure = 0.0;
  MeanAccumulator acc;

  if (space.compact()) {
    if (support.kind != Support::Kind::whole_space)
      throw UnsupportedRegime("global_quotient: box supports on compact spaces are not supported");
    region_measure = space.total_measure();
    acc = monte_carlo_mean(samples.outer, rng, exec, [&](Stream& local) {
      const SpacePoint x = sample_space(space, local);
      const double fx = f.value(x);
      double sum = 0.0;
      for (std::size_t j = 0; j < inner; ++j) sum += abs_pow(fx - f.value(sample_ball(space, x, r, local)), p);
      return sum / static_cast<double>(inner);
    });
  } else if (support.kind != Support::Kind::box) {
    throw UnsupportedRegime("global_quotient: " + f.name() + " does not have compact support on " + space.name());
  } else if (space.kind() == SpaceKind::weighted) {
    // Fattened support: the integrand vanishes unless x is within r of S.
    const Coords half = support.half_width.array() + r;
    if ((support.anchor.coords.cwiseAbs() + half).maxCoeff() + r > space.window())
      throw UnsupportedRegime("global_quotient: fattened support leaves the weight window");
    Support fattened = support;
    fattened.half_width = half;
    region_measure = fattened.box_volume();
    acc = monte_carlo_mean(samples.outer, rng, exec, [&](Stream& local) {
      const SpacePoint x = fattened.at(uniform_in_box(half, local));
      const double fx = f.value(x);
      double sum = 0.0;
      for (std::size_t j = 0; j < inner; ++j) sum += abs_pow(fx - f.value(sample_ball(space, x, r, local)), p);
      return space.weight(x.coords) * sum / static_cast<double>(inner);
    });
  } else {
    if (space.kind() == SpaceKind::glued && !(box_seam_clearance(support) > 2.0 * r))
      throw UnsupportedRegime("global_quotient: support within 2r = " + std::to_string(2.0 * r) +
                              " of the seam; only one-sided balls are supported");
    region_measure = support.box_volume();
    acc = monte_carlo_mean(samples.outer, rng, exec, [&](Stream& local) {
      const SpacePoint x = support.at(uniform_in_box(support.half_width, local));
      const double fx = f.value(x);
      const double fx_p = abs_pow(fx, p);
      double sum = 0.0;
      for (std::size_t j = 0; j < inner; ++j) {
        const SpacePoint y = sample_ball(space, x, r, local);
        sum += abs_pow(fx - f.value(y), p);
        if (!support.contains(y)) sum += fx_p;
      }
      return sum / static_cast<double>(inner);
    });
  }
  EnergyEstimate e = EnergyEstimate::from(acc, rng.seed(), region_measure / std::pow(r, p));
  e.samples = acc.count * inner;
  return e;
}

EnergyEstimate cheeger_energy(const ModelSpace& space, const TestFunction& f, double p, std::size_t samples,
                              const Stream& rng, const Execution& exec) {
  require_exponent(p);
  f.check_space(space);
  if (trivially_zero(f)) return {0.0, 0.0, 1, rng.seed()};
  const double lambda_p = abs_pow(f.amplitude(), p);
  const GaussRule rule = gauss_legendre(20);
  constexpr int kPanels = 32;
  const std::size_t nodes = static_cast<std::size_t>(kPanels) * 20;

  if (space.kind() == SpaceKind::torus && f.kind() == FunctionKind::sine) {
    // P = 2 pi k; |cos|^p over a period is 4 quarter periods.
    const double period = space.period();
    const double quarter = integrate([p](double x) { return std::pow(std::cos(x), p); }, 0.0, kPi / 2, kPanels, rule);
    const double turns = std::round(period / (2.0 * kPi));
    return quadrature_result(lambda_p * std::pow(period, space.dimension() - 1) * 4.0 * turns * quarter, nodes);
  }
  if (space.kind() == SpaceKind::sphere2 && f.kind() == FunctionKind::sphere_height) {
    // t = sin(theta): 2 pi \int cos^{p+1} theta d theta.
    const double integral =
        integrate([p](double th) { return std::pow(std::cos(th), p + 1.0); }, -kPi / 2, kPi / 2, kPanels, rule);
    return quadrature_result(lambda_p * 2.0 * kPi * integral, nodes);
  }
  if (f.kind() == FunctionKind::bump && space.kind() != SpaceKind::weighted) {
    const double R = f.radius();
    const double R2 = R * R;
    const SpacePoint& c = f.center();
    const bool heisenberg_side =
        c.kind == PointKind::heisenberg || (c.kind == PointKind::glued && c.side == glued::Side::heisenberg1);
    if (!heisenberg_side) {
      const int n = static_cast<int>(c.coords.size());
      const double radial = integrate(
          [&](double rho) {
            const double slope = std::abs(bump_profile_derivative(rho * rho / R2)) * 2.0 * rho / R2;
            return std::pow(slope, p) * std::pow(rho, n - 1);
          },
          0.0, R, kPanels, rule);
      return quadrature_result(lambda_p * sphere_surface(n) * radial, nodes);
    }
    // Koranyi bump: |grad_H g| = |phi'(t)| (4 / R^4) rho sqrt(rho^4 + 256 w3^2),
    // t = (rho^4 + 16 w3^2) / R^4, in cylindrical coordinates.
    const double R4 = R2 * R2;
    const double integral = integrate(
        [&](double w3) {
          const double top = std::pow(std::max(0.0, R4 - 16.0 * w3 * w3), 0.25);
          const double inner = integrate(
              [&](double rho) {
                const double rho4 = rho * rho * rho * rho;
                const double t = (rho4 + 16.0 * w3 * w3) / R4;
                const double slope =
                    std::abs(bump_profile_derivative(t)) * 4.0 / R4 * rho * std::sqrt(rho4 + 256.0 * w3 * w3);
                return std::pow(slope, p) * rho;
              },
              0.0, top, kPanels, rule);
          return inner;
        },
        -0.25 * R2, 0.25 * R2, kPanels, rule);
    return quadrature_result(lambda_p * 2.0 * kPi * integral, nodes * nodes);
  }
  const Support support = f.support();
  if (space.kind() == SpaceKind::weighted && support.kind == Support::Kind::box) {
    if (samples == 0) throw DomainError("cheeger_energy: Monte-Carlo path needs samples");
    const MeanAccumulator acc = monte_carlo_mean(samples, rng, exec, [&](Stream& local) {
      const SpacePoint x = support.at(uniform_in_box(support.half_width, local));
      return abs_pow(f.slope(x), p) * space.weight(x.coords);
    });
    return EnergyEstimate::from(acc, rng.seed(), support.box_volume());
  }
  throw UnsupportedRegime("cheeger_energy: " + f.name() + " has no compact support on " + space.name());
}

double uniform_bound_constant(const ModelSpace& space) {
  if (space.kind() == SpaceKind::weighted) {
    const double ratio = space.weight_upper() / space.weight_lower();
    return ratio * ratio;
  }
  return 1.0;
}

}  // namespace bbm
