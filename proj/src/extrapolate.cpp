#include "bbm/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bbm/errors.hpp"

namespace bbm {
namespace {

struct LinearFit {
  double limit = 0.0;
  double coefficient = 0.0;
  double ssr = std::numeric_limits<double>::infinity();
  double var_limit = 0.0;  // [(X^T W X)^{-1}]_00
};

LinearFit fit_at(const std::vector<RadiusPoint>& pts, const std::vector<double>& w, double alpha) {
  double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = std::pow(pts[i].r, alpha);
    s0 += w[i];
    s1 += w[i] * x;
    s2 += w[i] * x * x;
    t0 += w[i] * pts[i].value;
    t1 += w[i] * x * pts[i].value;
  }
  const double det = s0 * s2 - s1 * s1;
  LinearFit fit;
  if (!(det > 0.0)) return fit;
  fit.limit = (s2 * t0 - s1 * t1) / det;
  fit.coefficient = (s0 * t1 - s1 * t0) / det;
  fit.var_limit = s2 / det;
  fit.ssr = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double e = pts[i].value - fit.limit - fit.coefficient * std::pow(pts[i].r, alpha);
    fit.ssr += w[i] * e * e;
  }
  return fit;
}

}  // namespace

Extrapolation extrapolate(const std::vector<RadiusPoint>& points, const ExtrapolationOptions& options) {
  if (points.size() < 3) throw DomainError("extrapolate: need at least 3 points");
  if (!(options.alpha_max > 0.0) || options.alpha_grid < 2) throw DomainError("extrapolate: bad alpha range");
  for (const auto& pt : points) {
    if (!(pt.r > 0.0) || !std::isfinite(pt.value) || !(pt.std_error >= 0.0))
      throw DomainError("extrapolate: radii must be positive, values finite, errors non-negative");
  }
  const auto smallest = std::min_element(points.begin(), points.end(),
                                         [](const RadiusPoint& a, const RadiusPoint& b) { return a.r < b.r; });
  const bool weighted = std::all_of(points.begin(), points.end(), [](const RadiusPoint& pt) { return pt.std_error > 0.0; });
  std::vector<double> w(points.size(), 1.0);
  if (weighted)
    for (std::size_t i = 0; i < points.size(); ++i) w[i] = 1.0 / (points[i].std_error * points[i].std_error);

  const double dof = std::max<double>(1.0, static_cast<double>(points.size()) - 3.0);
  Extrapolation out{};
  out.weighted = weighted;

  double lo_v = points.front().value, hi_v = lo_v, scale = 0.0, max_r = 0.0;
  for (const auto& pt : points) {
    lo_v = std::min(lo_v, pt.value);
    hi_v = std::max(hi_v, pt.value);
    scale = std::max(scale, std::abs(pt.value));
    max_r = std::max(max_r, pt.r);
  }
  if (hi_v - lo_v <= 1e-14 * std::max(1.0, scale)) {
    // Flat data: alpha is not identifiable.
    double sw = 0.0, swv = 0.0, ssr = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      sw += w[i];
      swv += w[i] * points[i].value;
    }
    const double mean = swv / sw;
    for (std::size_t i = 0; i < points.size(); ++i) ssr += w[i] * (points[i].value - mean) * (points[i].value - mean);
    out.fitted_limit = out.limit = mean;
    out.limit_sigma = weighted ? std::sqrt(1.0 / sw) : 0.0;
    out.coefficient = 0.0;
    out.residual = ssr / dof;
    out.degenerate_rate = true;
    out.fallback = false;
    return out;
  }

  const double step = options.alpha_max / options.alpha_grid;
  int best = 1;
  LinearFit best_fit = fit_at(points, w, step);
  for (int k = 2; k <= options.alpha_grid; ++k) {
    const LinearFit fit = fit_at(points, w, k * step);
    if (fit.ssr < best_fit.ssr) {
      best_fit = fit;
      best = k;
    }
  }
  double best_alpha = best * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(1e-6, (best - 1) * step);
  double b = std::min(options.alpha_max, (best + 1) * step);
  auto ssr = [&](double alpha) { return fit_at(points, w, alpha).ssr; };
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = ssr(c), fd = ssr(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = ssr(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = ssr(d);
    }
  }
  if (fc < best_fit.ssr) {
    best_alpha = c;
    best_fit = fit_at(points, w, c);
  }
  if (fd < best_fit.ssr) {
    best_alpha = d;
    best_fit = fit_at(points, w, d);
  }

  out.fitted_limit = best_fit.limit;
  out.coefficient = best_fit.coefficient;
  out.residual = best_fit.ssr / dof;
  out.degenerate_rate =
      std::abs(best_fit.coefficient) * std::pow(max_r, best_alpha) <= 1e-12 * std::max(1.0, std::abs(best_fit.limit));
  if (!out.degenerate_rate) out.rate = best_alpha;
  const double sigma2 = weighted ? best_fit.var_limit : best_fit.var_limit * out.residual;
  out.fallback = !(out.residual <= options.residual_bound);
  if (out.fallback) {
    out.limit = smallest->value;
    out.limit_sigma = smallest->std_error;
  } else {
    out.limit = best_fit.limit;
    out.limit_sigma = std::sqrt(std::max(0.0, sigma2));
  }
  return out;
}

}  // namespace bbm
