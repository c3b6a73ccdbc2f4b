#pragma once

// First Heisenberg group H^1: R^3 with the law
//
//   (x1, x2, x3) . (y1, y2, y3) = (x1 + y1, x2 + y2, x3 + y3 + 2 (x1 y2 - x2 y1))
//
// and its Carnot-Caratheodory distance. Haar measure is Lebesgue measure.

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "bbm/errors.hpp"
#include "bbm/estimate.hpp"
#include "bbm/parallel.hpp"
#include "bbm/random.hpp"

namespace bbm::heisenberg {

template <class Scalar>
using Point = Eigen::Matrix<Scalar, 3, 1>;
using HPoint = Point<double>;

template <class Scalar>
Point<Scalar> group_mul(const Point<Scalar>& x, const Point<Scalar>& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2] + Scalar(2) * (x[0] * y[1] - x[1] * y[0])};
}

template <class Scalar>
Point<Scalar> group_inv(const Point<Scalar>& x) {
  return -x;
}

/// Anisotropic dilation (r z1, r z2, r^2 z3). Scales d0 by r and volume by r^4.
template <class Scalar>
Point<Scalar> dilate(Scalar r, const Point<Scalar>& z) {
  if (!(r > Scalar(0))) throw DomainError("dilate: factor must be positive");
  return {r * z[0], r * z[1], r * r * z[2]};
}

namespace detail {

// g(x) = (2x - sin 2x) / (2 sin^2 x), so that H(s) = g(pi s).
// Series coefficients of g (odd powers x^1 .. x^15) and g' (even powers).
template <class Scalar>
Scalar profile_series(Scalar x) {
  static constexpr long double c[] = {2.0L / 3,          4.0L / 45,           4.0L / 315,
                                      8.0L / 4725,       4.0L / 18711,        5528.0L / 212837625,
                                      8.0L / 2606175,    57872.0L / 162820783125};
  const Scalar x2 = x * x;
  Scalar acc = Scalar(0);
  for (int k = 7; k >= 0; --k) acc = acc * x2 + Scalar(c[k]);
  return acc * x;
}

template <class Scalar>
Scalar profile_series_derivative(Scalar x) {
  static constexpr long double c[] = {2.0L / 3,        4.0L / 15,          4.0L / 63,
                                      8.0L / 675,      4.0L / 2079,        5528.0L / 19348875,
                                      8.0L / 200475,   57872.0L / 10854718875};
  const Scalar x2 = x * x;
  Scalar acc = Scalar(0);
  for (int k = 7; k >= 0; --k) acc = acc * x2 + Scalar(c[k]);
  return acc;
}

inline constexpr double kSeriesCutoff = 0.25;

// H and dH/ds on s in [0, 1/2].
template <class Scalar>
void profile_near(Scalar s, Scalar& value, Scalar& slope) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar x = pi * s;
  if (x < Scalar(kSeriesCutoff)) {
    value = profile_series(x);
    slope = pi * profile_series_derivative(x);
    return;
  }
  const Scalar sx = std::sin(x);
  value = (Scalar(2) * x - std::sin(Scalar(2) * x)) / (Scalar(2) * sx * sx);
  slope = pi * (Scalar(2) - Scalar(2) * value * std::cos(x) / sx);
}

// G(e) = H(1 - e) and dG/de on e in (0, 1/2]; G decreases from +inf to pi/2.
template <class Scalar>
void profile_far(Scalar e, Scalar& value, Scalar& slope) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar y = pi * e;
  const Scalar sy = std::sin(y);
  value = (Scalar(2) * pi * (Scalar(1) - e) + std::sin(Scalar(2) * y)) / (Scalar(2) * sy * sy);
  slope = -pi * (Scalar(2) + Scalar(2) * value * std::cos(y) / sy);
}

/// Safeguarded Newton for an increasing residual f on a bracket with
/// f(lo) <= 0 <= f(hi). Newton steps that leave the bracket or stall are
/// replaced by bisection.
template <class Scalar, class Residual>
Scalar safeguarded_newton(Residual&& f, Scalar lo, Scalar hi, Scalar guess, Scalar ftol) {
  Scalar v = (guess > lo && guess < hi) ? guess : Scalar(0.5) * (lo + hi);
  Scalar step_old = hi - lo;
  for (int iter = 0; iter < 200; ++iter) {
    Scalar value, slope;
    f(v, value, slope);
    if (std::abs(value) <= ftol) return v;
    if (value < Scalar(0)) {
      lo = v;
    } else {
      hi = v;
    }
    Scalar next = v - value / slope;
    const bool newton_ok = slope > Scalar(0) && next > lo && next < hi &&
                           std::abs(Scalar(2) * value) <= std::abs(step_old * slope);
    if (!newton_ok) next = Scalar(0.5) * (lo + hi);
    step_old = std::abs(next - v);
    if (next == v || hi - lo <= std::numeric_limits<Scalar>::epsilon() * std::abs(v)) return next;
    v = next;
  }
  return v;
}

}  // namespace detail

/// Profile H(s) = 2 pi / (1 - cos 2 pi s) * (s - sin(2 pi s) / (2 pi)), an odd
/// increasing diffeomorphism of (-1, 1) onto R with H(0) = 0.
template <class Scalar>
Scalar h_profile(Scalar s) {
  if (!(std::abs(s) < Scalar(1))) throw DomainError("h_profile: |s| must be < 1");
  const Scalar a = std::abs(s);
  Scalar value, slope;
  if (a <= Scalar(0.5)) {
    detail::profile_near(a, value, slope);
  } else {
    detail::profile_far(Scalar(1) - a, value, slope);
  }
  return std::signbit(s) ? -value : value;
}

template <class Scalar>
Scalar h_profile_derivative(Scalar s) {
  if (!(std::abs(s) < Scalar(1))) throw DomainError("h_profile_derivative: |s| must be < 1");
  const Scalar a = std::abs(s);
  Scalar value, slope;
  if (a <= Scalar(0.5)) {
    detail::profile_near(a, value, slope);
    return slope;
  }
  detail::profile_far(Scalar(1) - a, value, slope);
  return -slope;
}

/// Solution s of H(s) = t together with 1 - |s|, which is kept to full
/// relative precision as |s| -> 1 (the regime near the center axis).
template <class Scalar>
struct ProfileRoot {
  Scalar s;
  Scalar complement;
};

template <class Scalar>
ProfileRoot<Scalar> h_inverse_split(Scalar t) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar a = std::abs(t);
  if (a == Scalar(0)) return {t, Scalar(1)};
  const Scalar ftol = Scalar(4) * eps * std::max(Scalar(1), a);
  Scalar s, complement;
  if (a <= pi / 2) {
    auto residual = [a](Scalar v, Scalar& value, Scalar& slope) {
      detail::profile_near(v, value, slope);
      value -= a;
    };
    s = detail::safeguarded_newton<Scalar>(residual, Scalar(0), Scalar(0.5),
                                           a / (Scalar(2) * pi / Scalar(3)), ftol);
    complement = Scalar(1) - s;
  } else {
    // G(e) ~ 1 / (pi e^2) as e -> 0 seeds the bracket; G(e0 / 2) > t always.
    auto residual = [a](Scalar e, Scalar& value, Scalar& slope) {
      detail::profile_far(e, value, slope);
      value = a - value;
      slope = -slope;
    };
    const Scalar seed = std::min(Scalar(0.5), Scalar(1) / std::sqrt(pi * a));
    Scalar lo = Scalar(0.5) * seed;
    Scalar g, dg;
    detail::profile_far(lo, g, dg);
    while (g < a) {
      lo *= Scalar(0.5);
      detail::profile_far(lo, g, dg);
    }
    complement = detail::safeguarded_newton<Scalar>(residual, lo, Scalar(0.5), seed, ftol);
    s = Scalar(1) - complement;
  }
  return {std::signbit(t) ? -s : s, complement};
}

/// H^{-1}: R -> (-1, 1), strictly increasing.
template <class Scalar>
Scalar h_inverse(Scalar t) {
  return h_inverse_split(t).s;
}

/// Carnot-Caratheodory distance from the origin,
///
///   d0(z) = (z3 / rho) sin(pi H^{-1}(z3 / rho^2)) + rho cos(pi H^{-1}(z3 / rho^2)),
///
/// rho^2 = z1^2 + z2^2. On the center axis the formula is 0/0 and its limit
/// sqrt(pi |z3|) is returned (confirmed numerically in the test-suite).
template <class Scalar>
Scalar d0(const Point<Scalar>& z) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar rho2 = z[0] * z[0] + z[1] * z[1];
  const Scalar height = std::abs(z[2]);
  const Scalar u = height / rho2;
  if (rho2 == Scalar(0) || !std::isfinite(u)) return std::sqrt(pi * height);
  const Scalar rho = std::sqrt(rho2);
  if (height == Scalar(0)) return rho;
  const ProfileRoot<Scalar> root = h_inverse_split(u);
  Scalar sin_ps, cos_ps;
  if (root.s <= Scalar(0.5)) {
    sin_ps = std::sin(pi * root.s);
    cos_ps = std::cos(pi * root.s);
  } else {
    sin_ps = std::sin(pi * root.complement);
    cos_ps = -std::cos(pi * root.complement);
  }
  return height / rho * sin_ps + rho * cos_ps;
}

/// d_{H^1}(x, y) = d0(y^{-1} x). Symmetric and left-invariant.
template <class Scalar>
Scalar cc_distance(const Point<Scalar>& x, const Point<Scalar>& y) {
  return d0(group_mul(group_inv(y), x));
}

/// Horizontal gradient (X1 f, X2 f) from the Euclidean coordinate gradient.
///
/// The frame is the differential of left translation at the identity:
/// d/dt [x . (t, 0, 0)] = (1, 0, -2 x2) and d/dt [x . (0, t, 0)] = (0, 1, 2 x1),
/// so X1 = d1 - 2 x2 d3 and X2 = d2 + 2 x1 d3.
template <class Scalar>
Eigen::Matrix<Scalar, 2, 1> horizontal_gradient(const Point<Scalar>& grad, const Point<Scalar>& z) {
  return {grad[0] - Scalar(2) * z[1] * grad[2], grad[1] + Scalar(2) * z[0] * grad[2]};
}

/// Norm of the horizontal gradient; equals the local Lipschitz constant of a
/// smooth function with respect to cc_distance.
template <class Scalar>
Scalar horizontal_slope(const Point<Scalar>& grad, const Point<Scalar>& z) {
  return horizontal_gradient(grad, z).norm();
}

// ---------------------------------------------------------------------------
// Unit ball B(0, 1) = {d0 < 1}

/// Largest z3 on the closed unit ball, found by maximizing the upper boundary
/// profile F(rho) = max{z3 : d0(rho, 0, z3) <= 1} over rho in [0, 1].
/// Computed once, cached.
double unit_ball_max_height();

/// F(rho) above, by bisection on d0.
double unit_ball_profile(double rho);

/// Half-height of the rejection box [-1,1]^2 x [-h, h]: 1.1 * max height.
double unit_ball_box_half_height();

/// Lebesgue volume of B(0, 1), 4 pi \int_0^1 rho F(rho) d rho by quadrature.
/// Computed once, cached.
double unit_ball_volume();

/// Uniform point of B(0, 1) by rejection from the bounding box.
HPoint sample_unit_ball(Stream& rng, std::size_t max_tries = 10000);

/// Monte-Carlo volume of B(0, 1): box volume times acceptance ratio.
EnergyEstimate unit_ball_volume_mc(std::size_t samples, const Stream& rng,
                                   const Execution& exec = {});

// ---------------------------------------------------------------------------
// Busemann functions along horizontal lines gamma(s) = (a s, b s, 0)

struct BusemannProbe {
  Eigen::Vector2d direction;
  HPoint z;
  std::vector<double> s_values;

  /// Throws DomainError unless a^2 + b^2 = 1 (1e-12) and s_values is
  /// positive and strictly increasing.
  void validate() const;
};

struct BusemannSample {
  double s;
  double value;  // d(z, gamma(+-s)) - s
};

/// b_{gamma,s}(z) for each s of the probe, along gamma(+s) (sign > 0) or
/// gamma(-s) (sign < 0).
std::vector<BusemannSample> busemann(const BusemannProbe& probe, int sign);

/// Summary against the limit -+ z.v: value at the largest s, the
/// least-squares constant C of |b_s - limit| ~ C / s, and monotonicity.
struct BusemannSummary {
  double limit;       // -(z.v) for sign > 0, +(z.v) for sign < 0
  double last_value;  // at the largest s
  double rate_constant;
  bool monotone;
};
BusemannSummary summarize_busemann(const BusemannProbe& probe, int sign,
                                   const std::vector<BusemannSample>& samples);

}  // namespace bbm::heisenberg
