#pragma once

// Model metric measure spaces (X, d, nu): Euclidean, weighted Euclidean,
// flat torus, round 2-sphere, H^1 and the glued space R^4 u_A H^1.

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <string>

#include "bbm/glued.hpp"
#include "bbm/heisenberg.hpp"
#include "bbm/random.hpp"

namespace bbm {

inline constexpr int kMaxDimension = 8;

/// Point coordinates; fixed capacity, no heap allocation.
using Coords = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::AutoAlign, kMaxDimension, 1>;

enum class SpaceKind { euclidean, weighted, torus, sphere2, heisenberg1, glued };

/// Which coordinate model a point lives in. Weighted spaces share the
/// Euclidean point model.
enum class PointKind { euclidean, torus, sphere, heisenberg, glued };

struct SpacePoint {
  PointKind kind = PointKind::euclidean;
  glued::Side side = glued::Side::euclidean4;  // glued points only
  Coords coords;

  static SpacePoint euclidean(const Coords& x) { return {PointKind::euclidean, glued::Side::euclidean4, x}; }
  static SpacePoint torus(const Coords& x) { return {PointKind::torus, glued::Side::euclidean4, x}; }
  static SpacePoint sphere(const Eigen::Vector3d& x) { return {PointKind::sphere, glued::Side::euclidean4, x}; }
  static SpacePoint heisenberg(const heisenberg::HPoint& z) {
    return {PointKind::heisenberg, glued::Side::euclidean4, z};
  }
  static SpacePoint glued(const glued::GluedPoint& g);

  [[nodiscard]] heisenberg::HPoint hpoint() const { return coords.head<3>(); }
  [[nodiscard]] glued::GluedPoint as_glued() const;
};

struct TangentLabel {
  enum class Kind { euclidean, heisenberg1, mixed };
  Kind kind;
  int dimension;  // topological dimension of the tangent, 4 for H^1, 0 if mixed

  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const TangentLabel&, const TangentLabel&) = default;
};

using WeightFunction = std::function<double(const Coords&)>;

/// An immutable metric measure space. Construct with the named factories.
class ModelSpace {
 public:
  static ModelSpace euclidean(int n);
  /// R^n with d nu = w dx. The bounds must hold on the window [-W, W]^n;
  /// balls leaving the window are rejected.
  static ModelSpace weighted(int n, WeightFunction weight, double lower, double upper, double window);
  static ModelSpace torus(int n, double period);
  static ModelSpace sphere2();
  static ModelSpace heisenberg1();
  static ModelSpace glued();

  [[nodiscard]] SpaceKind kind() const { return kind_; }
  [[nodiscard]] PointKind point_kind() const;
  /// Coordinate arity; 0 for the glued space (depends on the side).
  [[nodiscard]] int dimension() const { return dimension_; }
  [[nodiscard]] double period() const { return period_; }
  [[nodiscard]] double weight(const Coords& x) const { return weight_ ? weight_(x) : 1.0; }
  [[nodiscard]] double weight_lower() const { return lower_; }
  [[nodiscard]] double weight_upper() const { return upper_; }
  [[nodiscard]] double window() const { return window_; }
  [[nodiscard]] TangentLabel tangent() const;
  [[nodiscard]] std::string name() const;

  [[nodiscard]] bool compact() const { return kind_ == SpaceKind::torus || kind_ == SpaceKind::sphere2; }
  /// nu(X) for compact spaces; DomainError otherwise.
  [[nodiscard]] double total_measure() const;

  /// DomainError unless x is a valid point of this space.
  void check(const SpacePoint& x) const;

 private:
  ModelSpace(SpaceKind kind, int dimension) : kind_(kind), dimension_(dimension) {}

  SpaceKind kind_;
  int dimension_;
  double period_ = 0.0;
  WeightFunction weight_;
  double lower_ = 1.0;
  double upper_ = 1.0;
  double window_ = 0.0;
};

/// Geodesic distance. DomainError if a point does not belong to the space.
double distance(const ModelSpace& space, const SpacePoint& x, const SpacePoint& y);

/// A nu-uniform point of B(x, r).
/// Errors: SamplingError when the weighted rejection loop exceeds max_tries,
/// UnsupportedRegime for torus balls of radius >= period / 2, weighted balls
/// leaving the window and glued balls touching the seam.
SpacePoint sample_ball(const ModelSpace& space, const SpacePoint& x, double r, Stream& rng,
                       std::size_t max_tries = 100000);

/// nu-uniform point of a compact space.
SpacePoint sample_space(const ModelSpace& space, Stream& rng);

/// nu(B(x, r)). Exact except on weighted spaces, where it is a Monte-Carlo
/// estimate of \int_{B(x,r)} w dx with `samples` draws from `rng`.
struct Measure {
  double value;
  double std_error;
};
Measure ball_measure(const ModelSpace& space, const SpacePoint& x, double r, const Stream& rng = Stream(0),
                     std::size_t samples = 1u << 16);

/// Lebesgue volume of the Euclidean unit ball of R^n.
double unit_ball_volume(int n);

/// Uniform point of the Euclidean ball B(0, r) in R^n.
Coords sample_euclidean_ball(int n, double r, Stream& rng);

}  // namespace bbm
