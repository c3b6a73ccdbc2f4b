#include "bbm/glued.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bbm::glued {
namespace {

using heisenberg::cc_distance;
using heisenberg::HPoint;

// Grid scan over [-bound, bound] followed by golden-section refinement of the
// best cell and its neighbours. Makes no convexity assumption beyond the cell.
template <class F>
CrossDistance minimize_over_seam(F&& cost, double bound, const SeamSearch& search) {
  const int cells = std::max(2, search.grid_cells);
  const double step = 2.0 * bound / cells;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= cells; ++i) {
    const double value = cost(-bound + i * step);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -bound + std::max(0, best - 1) * step;
  double b = -bound + std::min(cells, best + 1) * step;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = cost(c);
  double fd = cost(d);
  while (b - a > search.tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = cost(d);
    }
  }
  CrossDistance result{best_value, -bound + best * step};
  if (fc < result.distance) result = {fc, c};
  if (fd < result.distance) result = {fd, d};
  return result;
}

double side_distance(const GluedPoint& a, const GluedPoint& b) {
  if (a.side == Side::euclidean4) return (a.euclidean - b.euclidean).norm();
  return cc_distance(a.heisenberg, b.heisenberg);
}

}  // namespace

GluedPoint GluedPoint::seam(double t, Side side) {
  return side == Side::euclidean4 ? on_euclidean(seam_euclidean(t)) : on_heisenberg(seam_heisenberg(t));
}

CrossDistance cross_distance(const Eigen::Vector4d& y, const HPoint& z, const SeamSearch& search) {
  // Any t with |t| > d_E(y, a(0)) + d_H(a(0), z) costs more than t = 0.
  const double bound = y.norm() + heisenberg::d0(z);
  if (bound == 0.0) return {0.0, 0.0};
  return minimize_over_seam(
      [&](double t) { return (y - seam_euclidean(t)).norm() + cc_distance(seam_heisenberg(t), z); },
      bound, search);
}

double glued_distance(const GluedPoint& y, const GluedPoint& z, const SeamSearch& search) {
  if (y.side == z.side) return side_distance(y, z);
  if (y.side == Side::euclidean4) return cross_distance(y.euclidean, z.heisenberg, search).distance;
  return cross_distance(z.euclidean, y.heisenberg, search).distance;
}

double seam_distance_lower_bound(const GluedPoint& x) {
  if (x.side == Side::euclidean4) return x.euclidean.tail<3>().norm();
  return std::abs(x.heisenberg[1]);
}

double distance_to_seam(const GluedPoint& x, const SeamSearch& search) {
  if (x.side == Side::euclidean4) return x.euclidean.tail<3>().norm();
  const HPoint& z = x.heisenberg;
  // cost(t) >= |t| - d0(z), so minimizers satisfy |t| <= 2 d0(z).
  const double bound = 2.0 * heisenberg::d0(z);
  if (bound == 0.0) return 0.0;
  return minimize_over_seam([&](double t) { return cc_distance(seam_heisenberg(t), z); }, bound, search)
      .distance;
}

SideRestrictionReport side_restriction_check(const std::vector<SameSideProbe>& probes, double tolerance) {
  SideRestrictionReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& probe : probes) {
    ++report.checked;
    const GluedPoint a = GluedPoint::seam(probe.t, probe.y.side);
    const GluedPoint a2 = GluedPoint::seam(probe.t2, probe.y.side);
    const double direct = side_distance(probe.y, probe.y2);
    const bool consistent = probe.y.side == probe.y2.side && glued_distance(probe.y, probe.y2) == direct;
    const double detour = side_distance(probe.y, a) + std::abs(probe.t - probe.t2) + side_distance(a2, probe.y2);
    const double margin = detour - direct;
    if (margin < report.worst_margin) report.worst_margin = margin;
    if (!consistent || margin < -tolerance) {
      ++report.violations;
      if (!report.witness) report.witness = probe;
    }
  }
  if (probes.empty()) report.worst_margin = 0.0;
  return report;
}

std::vector<SameSideProbe> random_same_side_probes(std::size_t count, Stream& rng, double scale) {
  std::vector<SameSideProbe> probes;
  probes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SameSideProbe probe;
    if (i % 2 == 0) {
      auto draw = [&] {
        return Eigen::Vector4d(rng.uniform(-scale, scale), rng.uniform(-scale, scale),
                               rng.uniform(-scale, scale), rng.uniform(-scale, scale));
      };
      probe.y = GluedPoint::on_euclidean(draw());
      probe.y2 = GluedPoint::on_euclidean(draw());
    } else {
      auto draw = [&] {
        return HPoint(rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale));
      };
      probe.y = GluedPoint::on_heisenberg(draw());
      probe.y2 = GluedPoint::on_heisenberg(draw());
    }
    probe.t = rng.uniform(-2 * scale, 2 * scale);
    probe.t2 = rng.uniform(-2 * scale, 2 * scale);
    probes.push_back(probe);
  }
  return probes;
}

}  // namespace bbm::glued
