#pragma once

// The glued space R^4 u_A H^1. The seam A is the first coordinate axis,
// a(t) = (t, 0, 0, 0) in R^4 and a(t) = (t, 0, 0) in H^1; it is an unbounded
// geodesic (a horizontal line) on both sides.

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

#include "bbm/heisenberg.hpp"
#include "bbm/random.hpp"

namespace bbm::glued {

enum class Side { euclidean4, heisenberg1 };

struct GluedPoint {
  Side side;
  Eigen::Vector4d euclidean = Eigen::Vector4d::Zero();  // used when side == euclidean4
  heisenberg::HPoint heisenberg = heisenberg::HPoint::Zero();

  static GluedPoint on_euclidean(const Eigen::Vector4d& y) { return {Side::euclidean4, y, {}}; }
  static GluedPoint on_heisenberg(const heisenberg::HPoint& z) {
    return {Side::heisenberg1, Eigen::Vector4d::Zero(), z};
  }
  /// Seam point a(t), represented on the requested side.
  static GluedPoint seam(double t, Side side);
};

inline Eigen::Vector4d seam_euclidean(double t) { return {t, 0.0, 0.0, 0.0}; }
inline heisenberg::HPoint seam_heisenberg(double t) { return {t, 0.0, 0.0}; }

/// Controls for the cross-side minimization over the seam parameter.
struct SeamSearch {
  int grid_cells = 400;
  double tolerance = 1e-10;  // golden-section bracket width
};

/// inf_t d_E(y, a(t)) + d_H(a(t), z), with the minimizing t.
struct CrossDistance {
  double distance;
  double t;
};
CrossDistance cross_distance(const Eigen::Vector4d& y, const heisenberg::HPoint& z,
                             const SeamSearch& search = {});

/// Distance on the glued space. Same-side pairs use the side's own metric
/// (the seam is geodesic in both factors, so detours through it never win;
/// see side_restriction_check); cross-side pairs use cross_distance.
double glued_distance(const GluedPoint& y, const GluedPoint& z, const SeamSearch& search = {});

/// Distance from a point to the seam within its own side.
double distance_to_seam(const GluedPoint& x, const SeamSearch& search = {});

/// Cheap lower bound of distance_to_seam: |(y2, y3, y4)| exactly on the R^4
/// side, |z2| on the H^1 side (d0 dominates the horizontal norm).
double seam_distance_lower_bound(const GluedPoint& x);

// ---------------------------------------------------------------------------

/// One same-side probe: the direct distance d(y, y2) against the detour
/// y -> a(t) -> a(t2) -> y2 through the other side, where d(a(t), a(t2)) = |t - t2|.
struct SameSideProbe {
  GluedPoint y;
  GluedPoint y2;
  double t;
  double t2;
};

struct SideRestrictionReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // min over probes of (detour - direct)
  std::optional<SameSideProbe> witness;

  [[nodiscard]] bool ok() const { return violations == 0; }
};

/// Verifies that glued_distance restricted to one side equals the side metric
/// and that no detour through the seam is shorter (slack `tolerance`).
SideRestrictionReport side_restriction_check(const std::vector<SameSideProbe>& probes,
                                             double tolerance = 1e-9);

/// Random same-side probes on both sides, coordinates in [-scale, scale].
std::vector<SameSideProbe> random_same_side_probes(std::size_t count, Stream& rng, double scale = 3.0);

}  // namespace bbm::glued
