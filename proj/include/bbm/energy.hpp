#pragma once

// The nonlocal difference quotient
//
//   Q_{r,p}(f) = r^{-p} \int_X avg_{B(x,r)} |f(x) - f(y)|^p d nu(y) d nu(x)
//
// its pointwise integrand, and the Cheeger energy Ch_p(f) = \int_X Lip(f)^p d nu.

#include <cstddef>

#include "bbm/estimate.hpp"
#include "bbm/geometry.hpp"
#include "bbm/parallel.hpp"
#include "bbm/random.hpp"
#include "bbm/test_function.hpp"

namespace bbm {

/// r^{-p} avg_{B(x,r)} |f(x) - f(y)|^p by Monte Carlo over y.
EnergyEstimate pointwise_quotient(const ModelSpace& space, const TestFunction& f, const SpacePoint& x, double p,
                                  double r, std::size_t samples, const Stream& rng, const Execution& exec = {});

struct NestedSamples {
  std::size_t outer;
  std::size_t inner = 1;
};

/// Q_{r,p}(f) by nested Monte Carlo.
///
/// Outer points are drawn from a region carrying all of the integrand:
///  - compact spaces: the whole space;
///  - R^n, H^1 and the glued space: the support box S of f, with the
///    integrand folded to |f(x)-f(y)|^p + |f(x)|^p 1{y not in S}. Balls have
///    the same measure everywhere and d is symmetric, so the part of the
///    integral over x outside S equals this extra term (Fubini);
///  - weighted spaces: S fattened by r, where the ball measure varies.
/// The standard error is the spread of the per-outer-point inner means, so
/// it covers both levels of sampling.
///
/// Errors: UnsupportedRegime if f does not have compact support on a
/// non-compact space, or on the glued space if S comes within 2r of the seam.
EnergyEstimate global_quotient(const ModelSpace& space, const TestFunction& f, double p, double r,
                               NestedSamples samples, const Stream& rng, const Execution& exec = {});

/// Ch_p(f). Quadrature where the preset allows it (std_error 0, `samples`
/// reports the node count):
///  - sine on a torus: P^{N-1} \int_0^P |cos|^p;
///  - sphere height: 2 pi \int_{-1}^{1} (1 - t^2)^{p/2} dt;
///  - Euclidean bumps: radial integral; H^1 bumps: cylindrical integral in
///    the local coordinates;
/// and Monte Carlo over the support box otherwise (weighted spaces).
EnergyEstimate cheeger_energy(const ModelSpace& space, const TestFunction& f, double p, std::size_t samples,
                              const Stream& rng, const Execution& exec = {});

/// Explicit constant C with Q_{r,p}(f) <= C Ch_p(f) for every r.
///
/// On spaces whose balls are images of one model ball under measure
/// preserving maps that move points along curves of length <= r (R^n, tori,
/// the sphere through rotations, H^1 through right translation by dilated
/// geodesics, and either side of the glued space away from the seam),
/// |f(x) - f(y)|^p <= r^{p-1} \int |slope|^p along the curve gives C = 1.
/// Weighted spaces pay the density ratio twice: C = (w_max / w_min)^2.
double uniform_bound_constant(const ModelSpace& space);

/// The tangent that governs the limit of Q_{r,p}(f): the space's label, or
/// the side of the bump on the glued space.
TangentLabel governing_tangent(const ModelSpace& space, const TestFunction& f);

}  // namespace bbm
