#pragma once

// Smooth test functions with exact analytic slopes.

#include <Eigen/Core>

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "bbm/geometry.hpp"

namespace bbm {

enum class FunctionKind { linear, sine, sphere_height, h1_horizontal_linear, bump, constant };

/// Region outside which a function vanishes.
///
/// A box is {anchor * w : w in [-h, h]}, with * the translation of the
/// anchor's model (vector addition on R^n, the group law on H^1). Both are
/// Lebesgue-measure preserving, so the box has measure prod(2 h).
struct Support {
  enum class Kind { whole_space, box, empty };
  Kind kind = Kind::whole_space;
  SpacePoint anchor;
  Coords half_width;

  [[nodiscard]] double box_volume() const;
  /// Local coordinates w of x relative to the anchor (anchor^{-1} * x).
  [[nodiscard]] Coords local(const SpacePoint& x) const;
  [[nodiscard]] SpacePoint at(const Coords& w) const;
  [[nodiscard]] bool contains(const SpacePoint& x) const;
};

class TestFunction {
 public:
  /// x -> v . x on R^n.
  static TestFunction linear(const Coords& v);
  /// x -> sin(x_axis), axis counted from 1.
  static TestFunction sine(int axis);
  /// Restriction of z3 to the unit sphere.
  static TestFunction sphere_height();
  /// z -> a z1 + b z2 on H^1.
  static TestFunction h1_horizontal_linear(double a, double b);
  /// phi(t) with phi(t) = exp(1 - 1 / (1 - t)) for t < 1 and 0 otherwise,
  /// w the local coordinates around `center`. On R^n t = |w|^2 / R^2. On H^1
  /// w = center^{-1} z and t = (|w_h|^4 + 16 w3^2) / R^4 (Koranyi gauge), so
  /// that the bump of radius R is the unit bump composed with dilate(1 / R).
  /// On the glued space the bump lives on the center's side.
  static TestFunction bump(const SpacePoint& center, double radius);
  static TestFunction constant(double value);

  [[nodiscard]] double value(const SpacePoint& x) const;
  /// Local Lipschitz constant Lip(f)(x).
  [[nodiscard]] double slope(const SpacePoint& x) const;
  [[nodiscard]] Support support() const;
  /// Global Lipschitz constant (an upper bound of every slope value).
  [[nodiscard]] double lipschitz_bound() const;
  /// lambda * f, exact: the same arithmetic with one extra factor.
  [[nodiscard]] TestFunction scaled(double lambda) const;

  [[nodiscard]] FunctionKind kind() const { return kind_; }
  [[nodiscard]] double amplitude() const { return amplitude_; }
  [[nodiscard]] int axis() const { return axis_; }
  [[nodiscard]] const Coords& vector() const { return vector_; }
  [[nodiscard]] const SpacePoint& center() const { return center_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] std::string name() const;

  /// DomainError unless the preset makes sense on `space` (dimension, model,
  /// periodicity for sine on a torus).
  void check_space(const ModelSpace& space) const;

 private:
  explicit TestFunction(FunctionKind kind) : kind_(kind) {}

  FunctionKind kind_;
  double amplitude_ = 1.0;
  int axis_ = 0;       // 0-based
  Coords vector_;      // linear: v; h1_horizontal_linear: (a, b)
  SpacePoint center_;  // bump
  double radius_ = 0.0;
  double constant_ = 0.0;
};

/// Bump profile phi(t) and its derivative, t in [0, 1).
double bump_profile(double t);
double bump_profile_derivative(double t);
/// sup over s in [0, 1) of 2 s |phi'(s^2)|: the Euclidean Lipschitz constant
/// of the unit-radius bump. Computed once, cached.
double bump_lipschitz_unit();
/// The same for the unit H^1 bump: sup of its horizontal slope.
double koranyi_bump_lipschitz_unit();

// ---------------------------------------------------------------------------
// Presets: `kind:key=value:key=v1,v2,...`

/// A preset name with numeric parameters, canonically ordered by key.
struct PresetSpec {
  std::string kind;
  std::map<std::string, std::vector<double>> params;

  /// UsageError on malformed text.
  static PresetSpec parse(const std::string& text);
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] bool has(const std::string& key) const { return params.count(key) != 0; }
  [[nodiscard]] double scalar(const std::string& key) const;
  [[nodiscard]] double scalar(const std::string& key, double fallback) const;
  [[nodiscard]] std::vector<double> list(const std::string& key) const;
  /// UsageError if a key outside `allowed` is present.
  void only(std::initializer_list<const char*> allowed) const;

  friend bool operator==(const PresetSpec&, const PresetSpec&) = default;
};

/// euclidean:n=N | weighted:n=N:amp=A:window=W | torus:n=N:period=P |
/// sphere2 | heisenberg1 | glued.
/// The weighted preset uses w(x) = 1 + A exp(-|x|^2 / 2), bounds [1, 1 + A].
ModelSpace make_space(const PresetSpec& spec);

/// linear:v=... | sine:axis=K | sphere_height | h1_horizontal_linear:a=A:b=B |
/// bump:center=...:radius=R | constant:value=C, each with an optional
/// scale=lambda. Bump centers with 3 coordinates are H^1 points (or the H^1
/// side when `space` is glued), otherwise Euclidean.
TestFunction make_test_function(const PresetSpec& spec, const ModelSpace& space);

}  // namespace bbm
