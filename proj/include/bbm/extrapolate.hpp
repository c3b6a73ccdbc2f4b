#pragma once

// r -> 0 extrapolation of quotient estimates by the model value = L + c r^alpha.

#include <optional>
#include <vector>

namespace bbm {

struct RadiusPoint {
  double r;
  double value;
  double std_error;
};

struct ExtrapolationOptions {
  double alpha_max = 2.0;
  int alpha_grid = 200;
  /// Reduced weighted residual above which the fit is rejected in favour of
  /// the smallest-r value.
  double residual_bound = 10.0;
};

struct Extrapolation {
  double limit;        // the value to use: fitted L, or the fallback
  double limit_sigma;  // propagated from the fit, or the fallback's std_error
  double fitted_limit;
  std::optional<double> rate;  // alpha; empty when degenerate
  double coefficient;          // c
  double residual;             // weighted SSR / max(1, n - 3)
  bool weighted;               // false when some std_error is 0 (unit weights)
  bool degenerate_rate;        // c r^alpha indistinguishable from 0
  bool fallback;
};

/// Least-squares fit of value = L + c r^alpha with alpha in (0, alpha_max],
/// weights 1 / std_error^2. alpha is found by a grid scan plus golden-section
/// refinement; L and c are linear given alpha.
/// Errors: DomainError with fewer than 3 points or non-positive radii.
Extrapolation extrapolate(const std::vector<RadiusPoint>& points, const ExtrapolationOptions& options = {});

}  // namespace bbm
