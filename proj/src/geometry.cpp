#include "bbm/geometry.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bbm/errors.hpp"

namespace bbm {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x, double period) {
  double w = std::fmod(x, period);
  if (w < 0.0) w += period;
  return w >= period ? 0.0 : w;
}

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ball radius must be positive and finite");
}

std::string kind_name(PointKind kind) {
  switch (kind) {
    case PointKind::euclidean: return "euclidean";
    case PointKind::torus: return "torus";
    case PointKind::sphere: return "sphere";
    case PointKind::heisenberg: return "heisenberg";
    case PointKind::glued: return "glued";
  }
  return "?";
}

// Unit vectors u, v completing x to an orthonormal frame.
void complete_frame(const Eigen::Vector3d& x, Eigen::Vector3d& u, Eigen::Vector3d& v) {
  Eigen::Index smallest;
  x.cwiseAbs().minCoeff(&smallest);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[smallest] = 1.0;
  u = x.cross(e).normalized();
  v = x.cross(u);
}

void require_one_sided(const SpacePoint& x, double r) {
  const glued::GluedPoint g = x.as_glued();
  if (glued::seam_distance_lower_bound(g) > r) return;
  if (glued::distance_to_seam(g) > r) return;
  throw UnsupportedRegime("glued space: ball of radius " + std::to_string(r) +
                          " reaches the seam; only one-sided balls are supported");
}

void require_in_window(const ModelSpace& space, const SpacePoint& x, double r) {
  if (x.coords.cwiseAbs().maxCoeff() + r > space.window())
    throw UnsupportedRegime("weighted space: ball leaves the window where the weight bounds hold");
}

double checked_weight(const ModelSpace& space, const Coords& y) {
  const double w = space.weight(y);
  if (!(w >= space.weight_lower() && w <= space.weight_upper()))
    throw DomainError("weighted space: weight " + std::to_string(w) + " outside the declared bounds");
  return w;
}

}  // namespace

SpacePoint SpacePoint::glued(const glued::GluedPoint& g) {
  SpacePoint p;
  p.kind = PointKind::glued;
  p.side = g.side;
  if (g.side == glued::Side::euclidean4) {
    p.coords = g.euclidean;
  } else {
    p.coords = g.heisenberg;
  }
  return p;
}

glued::GluedPoint SpacePoint::as_glued() const {
  if (side == glued::Side::euclidean4) return glued::GluedPoint::on_euclidean(coords.head<4>());
  return glued::GluedPoint::on_heisenberg(coords.head<3>());
}

std::string TangentLabel::to_string() const {
  switch (kind) {
    case Kind::euclidean: return "euclidean(" + std::to_string(dimension) + ")";
    case Kind::heisenberg1: return "heisenberg1";
    case Kind::mixed: return "mixed";
  }
  return "?";
}

ModelSpace ModelSpace::euclidean(int n) {
  if (n < 1 || n > kMaxDimension) throw DomainError("euclidean: dimension must be in [1, 8]");
  return {SpaceKind::euclidean, n};
}

ModelSpace ModelSpace::weighted(int n, WeightFunction weight, double lower, double upper, double window) {
  if (n < 1 || n > kMaxDimension) throw DomainError("weighted: dimension must be in [1, 8]");
  if (!weight) throw DomainError("weighted: missing weight function");
  if (!(lower > 0.0)) throw DomainError("weighted: weight lower bound must be positive");
  if (!(upper >= lower) || !std::isfinite(upper)) throw DomainError("weighted: weight upper bound must be finite");
  if (!(window > 0.0) || !std::isfinite(window)) throw DomainError("weighted: window must be positive");
  ModelSpace s(SpaceKind::weighted, n);
  s.weight_ = std::move(weight);
  s.lower_ = lower;
  s.upper_ = upper;
  s.window_ = window;
  return s;
}

ModelSpace ModelSpace::torus(int n, double period) {
  if (n < 1 || n > kMaxDimension) throw DomainError("torus: dimension must be in [1, 8]");
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("torus: period must be positive");
  ModelSpace s(SpaceKind::torus, n);
  s.period_ = period;
  return s;
}

ModelSpace ModelSpace::sphere2() { return {SpaceKind::sphere2, 3}; }
ModelSpace ModelSpace::heisenberg1() { return {SpaceKind::heisenberg1, 3}; }
ModelSpace ModelSpace::glued() { return {SpaceKind::glued, 0}; }

PointKind ModelSpace::point_kind() const {
  switch (kind_) {
    case SpaceKind::euclidean:
    case SpaceKind::weighted: return PointKind::euclidean;
    case SpaceKind::torus: return PointKind::torus;
    case SpaceKind::sphere2: return PointKind::sphere;
    case SpaceKind::heisenberg1: return PointKind::heisenberg;
    case SpaceKind::glued: return PointKind::glued;
  }
  return PointKind::euclidean;
}

TangentLabel ModelSpace::tangent() const {
  switch (kind_) {
    case SpaceKind::euclidean:
    case SpaceKind::weighted:
    case SpaceKind::torus: return {TangentLabel::Kind::euclidean, dimension_};
    case SpaceKind::sphere2: return {TangentLabel::Kind::euclidean, 2};
    case SpaceKind::heisenberg1: return {TangentLabel::Kind::heisenberg1, 4};
    case SpaceKind::glued: return {TangentLabel::Kind::mixed, 0};
  }
  return {TangentLabel::Kind::mixed, 0};
}

std::string ModelSpace::name() const {
  std::ostringstream out;
  switch (kind_) {
    case SpaceKind::euclidean: out << "euclidean(" << dimension_ << ")"; break;
    case SpaceKind::weighted: out << "weighted(" << dimension_ << ")"; break;
    case SpaceKind::torus: out << "torus(" << dimension_ << ", " << period_ << ")"; break;
    case SpaceKind::sphere2: out << "sphere2"; break;
    case SpaceKind::heisenberg1: out << "heisenberg1"; break;
    case SpaceKind::glued: out << "glued"; break;
  }
  return out.str();
}

double ModelSpace::total_measure() const {
  if (kind_ == SpaceKind::torus) return std::pow(period_, dimension_);
  if (kind_ == SpaceKind::sphere2) return 4.0 * kPi;
  throw DomainError(name() + " has infinite measure");
}

void ModelSpace::check(const SpacePoint& x) const {
  if (x.kind != point_kind())
    throw DomainError("point of kind " + kind_name(x.kind) + " does not belong to " + name());
  if (!x.coords.allFinite()) throw DomainError("point has non-finite coordinates");
  if (kind_ == SpaceKind::glued) {
    const Eigen::Index arity = x.side == glued::Side::euclidean4 ? 4 : 3;
    if (x.coords.size() != arity) throw DomainError("glued point arity does not match its side");
    return;
  }
  if (x.coords.size() != dimension_)
    throw DomainError(name() + ": expected " + std::to_string(dimension_) + " coordinates");
  if (kind_ == SpaceKind::sphere2 && std::abs(x.coords.norm() - 1.0) > 1e-12)
    throw DomainError("sphere point must have unit norm");
  if (kind_ == SpaceKind::torus && ((x.coords.array() < 0.0).any() || (x.coords.array() >= period_).any()))
    throw DomainError("torus coordinates must lie in [0, period)");
}

double distance(const ModelSpace& space, const SpacePoint& x, const SpacePoint& y) {
  space.check(x);
  space.check(y);
  switch (space.kind()) {
    case SpaceKind::euclidean:
    case SpaceKind::weighted: return (x.coords - y.coords).norm();
    case SpaceKind::torus: {
      const double period = space.period();
      double sum = 0.0;
      for (Eigen::Index i = 0; i < x.coords.size(); ++i) {
        const double delta = std::abs(x.coords[i] - y.coords[i]);
        const double d = std::min(delta, period - delta);
        sum += d * d;
      }
      return std::sqrt(sum);
    }
    case SpaceKind::sphere2: {
      const Eigen::Vector3d a = x.coords.head<3>();
      const Eigen::Vector3d b = y.coords.head<3>();
      return std::atan2(a.cross(b).norm(), a.dot(b));
    }
    case SpaceKind::heisenberg1: return heisenberg::cc_distance(x.hpoint(), y.hpoint());
    case SpaceKind::glued: return glued::glued_distance(x.as_glued(), y.as_glued());
  }
  return 0.0;
}

double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

Coords sample_euclidean_ball(int n, double r, Stream& rng) {
  Coords v(n);
  double norm = 0.0;
  while (norm == 0.0) {
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    norm = v.norm();
  }
  return v * (r * std::pow(rng.uniform(), 1.0 / n) / norm);
}

SpacePoint sample_ball(const ModelSpace& space, const SpacePoint& x, double r, Stream& rng,
                       std::size_t max_tries) {
  require_radius(r);
  space.check(x);
  switch (space.kind()) {
    case SpaceKind::euclidean: return SpacePoint::euclidean(x.coords + sample_euclidean_ball(space.dimension(), r, rng));
    case SpaceKind::weighted: {
      require_in_window(space, x, r);
      for (std::size_t tries = 0; tries < max_tries; ++tries) {
        const Coords y = x.coords + sample_euclidean_ball(space.dimension(), r, rng);
        if (rng.uniform() * space.weight_upper() < checked_weight(space, y)) return SpacePoint::euclidean(y);
      }
      std::ostringstream msg;
      msg << "weighted ball sampler: no acceptance after " << max_tries << " proposals (r = " << r
          << ", weight bounds [" << space.weight_lower() << ", " << space.weight_upper() << "])";
      throw SamplingError(msg.str());
    }
    case SpaceKind::torus: {
      const double period = space.period();
      if (r >= 0.5 * period) throw UnsupportedRegime("torus: ball radius must be below half the period");
      Coords y = x.coords + sample_euclidean_ball(space.dimension(), r, rng);
      for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = wrap(y[i], period);
      return SpacePoint::torus(y);
    }
    case SpaceKind::sphere2: {
      const Eigen::Vector3d c = x.coords.head<3>();
      Eigen::Vector3d u, v;
      complete_frame(c, u, v);
      // Cap area density is 2 pi sin(theta) d theta, so cos(theta) is uniform.
      const double lowest = r >= kPi ? -1.0 : std::cos(r);
      const double cos_t = rng.uniform(lowest, 1.0);
      const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
      const double phi = 2.0 * kPi * rng.uniform();
      const Eigen::Vector3d y = cos_t * c + sin_t * (std::cos(phi) * u + std::sin(phi) * v);
      return SpacePoint::sphere(y.normalized());
    }
    case SpaceKind::heisenberg1: {
      const heisenberg::HPoint u = heisenberg::sample_unit_ball(rng);
      return SpacePoint::heisenberg(heisenberg::group_mul(x.hpoint(), heisenberg::dilate(r, u)));
    }
    case SpaceKind::glued: {
      require_one_sided(x, r);
      SpacePoint y = x;
      if (x.side == glued::Side::euclidean4) {
        y.coords = x.coords + sample_euclidean_ball(4, r, rng);
      } else {
        const heisenberg::HPoint u = heisenberg::sample_unit_ball(rng);
        y.coords = heisenberg::group_mul(x.hpoint(), heisenberg::dilate(r, u));
      }
      return y;
    }
  }
  return x;
}

SpacePoint sample_space(const ModelSpace& space, Stream& rng) {
  if (space.kind() == SpaceKind::torus) {
    Coords y(space.dimension());
    for (int i = 0; i < space.dimension(); ++i) y[i] = wrap(space.period() * rng.uniform(), space.period());
    return SpacePoint::torus(y);
  }
  if (space.kind() == SpaceKind::sphere2) {
    const double z = rng.uniform(-1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * kPi * rng.uniform();
    return SpacePoint::sphere(Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z).normalized());
  }
  throw DomainError(space.name() + " is not compact; no uniform distribution");
}

Measure ball_measure(const ModelSpace& space, const SpacePoint& x, double r, const Stream& rng,
                     std::size_t samples) {
  require_radius(r);
  space.check(x);
  switch (space.kind()) {
    case SpaceKind::euclidean: return {unit_ball_volume(space.dimension()) * std::pow(r, space.dimension()), 0.0};
    case SpaceKind::torus:
      if (r >= 0.5 * space.period()) throw UnsupportedRegime("torus: ball radius must be below half the period");
      return {unit_ball_volume(space.dimension()) * std::pow(r, space.dimension()), 0.0};
    case SpaceKind::sphere2: return {r >= kPi ? 4.0 * kPi : 2.0 * kPi * (1.0 - std::cos(r)), 0.0};
    case SpaceKind::heisenberg1: return {std::pow(r, 4) * heisenberg::unit_ball_volume(), 0.0};
    case SpaceKind::glued:
      require_one_sided(x, r);
      if (x.side == glued::Side::euclidean4) return {unit_ball_volume(4) * std::pow(r, 4), 0.0};
      return {std::pow(r, 4) * heisenberg::unit_ball_volume(), 0.0};
    case SpaceKind::weighted: {
      require_in_window(space, x, r);
      if (samples < 2) throw DomainError("ball_measure: need at least 2 samples");
      const int n = space.dimension();
      const double volume = unit_ball_volume(n) * std::pow(r, n);
      const MeanAccumulator acc = monte_carlo_mean(samples, rng, Execution{}, [&](Stream& local) {
        return checked_weight(space, x.coords + sample_euclidean_ball(n, r, local));
      });
      return {volume * acc.mean, volume * acc.std_error()};
    }
  }
  return {0.0, 0.0};
}

}  // namespace bbm
