#include "bbm/test_function.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace bbm;
using oracle::kPi;

namespace {

Coords vec(std::initializer_list<double> v) {
  Coords c(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) c[i++] = x;
  return c;
}

// max over 720 directions of |f(y) - f(x)| / eps, y at distance eps along a
// straight line (R^n) or a horizontal segment (H^1).
double numerical_slope_euclidean(const TestFunction& f, const Coords& x, double eps = 1e-6) {
  double best = 0.0;
  const Eigen::Index n = x.size();
  for (int k = 0; k < 720; ++k) {
    const double th = 2 * kPi * k / 720;
    Coords dir = Coords::Zero(n);
    dir[0] = std::cos(th);
    dir[n > 1 ? 1 : 0] += std::sin(th);
    dir.normalize();
    const double d = std::abs(f.value(SpacePoint::euclidean(x + eps * dir)) - f.value(SpacePoint::euclidean(x)));
    best = std::max(best, d / eps);
  }
  return best;
}

double numerical_slope_h1(const TestFunction& f, const heisenberg::HPoint& z, double eps = 1e-6) {
  double best = 0.0;
  for (int k = 0; k < 720; ++k) {
    const double th = 2 * kPi * k / 720;
    const heisenberg::HPoint y = heisenberg::group_mul(z, heisenberg::HPoint(eps * std::cos(th), eps * std::sin(th), 0));
    best = std::max(best, std::abs(f.value(SpacePoint::heisenberg(y)) - f.value(SpacePoint::heisenberg(z))) / eps);
  }
  return best;
}

}  // namespace

TEST_CASE("preset slopes") {
  const auto lin = TestFunction::linear(vec({1, 0}));
  CHECK(lin.slope(SpacePoint::euclidean(vec({3, -2}))) == 1.0);
  CHECK(lin.value(SpacePoint::euclidean(vec({3, -2}))) == 3.0);
  CHECK(TestFunction::linear(vec({3, 4})).slope(SpacePoint::euclidean(vec({0, 0}))) == 5.0);

  const auto s = TestFunction::sine(1);
  CHECK(s.slope(SpacePoint::torus(vec({0.3, 1}))) == doctest::Approx(std::cos(0.3)));

  const auto h = TestFunction::sphere_height();
  const Eigen::Vector3d p = Eigen::Vector3d(1, 2, 2) / 3.0;
  CHECK(h.slope(SpacePoint::sphere(p)) == doctest::Approx(std::sqrt(1 - 4.0 / 9)));
  // Along the meridian through p: d/ds of cos(theta0 + s) at unit speed.
  const double theta0 = std::acos(p[2]);
  const double eps = 1e-6;
  CHECK(std::abs(std::cos(theta0 + eps) - std::cos(theta0)) / eps == doctest::Approx(h.slope(SpacePoint::sphere(p))).epsilon(1e-5));

  const auto hl = TestFunction::h1_horizontal_linear(0.6, 0.8);
  CHECK(hl.slope(SpacePoint::heisenberg({5, -3, 7})) == doctest::Approx(1.0));
  CHECK(numerical_slope_h1(hl, {5, -3, 7}) == doctest::Approx(1.0).epsilon(1e-5));

  CHECK(TestFunction::constant(3).slope(SpacePoint::euclidean(vec({0}))) == 0.0);
}

TEST_CASE("bump slopes match finite differences") {
  const auto f = TestFunction::bump(SpacePoint::euclidean(vec({1, 2})), 1.5);
  Stream rng(3);
  for (int i = 0; i < 50; ++i) {
    const Coords x = vec({1 + rng.uniform(-1.4, 1.4), 2 + rng.uniform(-1.4, 1.4)});
    const double slope = f.slope(SpacePoint::euclidean(x));
    CHECK(std::abs(numerical_slope_euclidean(f, x) - slope) <= 1e-5 + 1e-4 * slope);
  }

  const auto g = TestFunction::bump(SpacePoint::heisenberg({0.5, 1, -1}), 2.0);
  for (int i = 0; i < 50; ++i) {
    const heisenberg::HPoint w(rng.uniform(-1.9, 1.9), rng.uniform(-1.9, 1.9), rng.uniform(-0.9, 0.9));
    const heisenberg::HPoint z = heisenberg::group_mul(heisenberg::HPoint(0.5, 1, -1), w);
    const double slope = g.slope(SpacePoint::heisenberg(z));
    CHECK(std::abs(numerical_slope_h1(g, z) - slope) <= 1e-5 + 1e-4 * slope);
  }
}

TEST_CASE("H^1 bump is the unit bump composed with a dilation") {
  const auto unit = TestFunction::bump(SpacePoint::heisenberg({0, 0, 0}), 1.0);
  const auto wide = TestFunction::bump(SpacePoint::heisenberg({0, 0, 0}), 3.0);
  Stream rng(4);
  for (int i = 0; i < 100; ++i) {
    const heisenberg::HPoint w(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3));
    const auto z = SpacePoint::heisenberg(heisenberg::dilate(3.0, w));
    CHECK(wide.value(z) == doctest::Approx(unit.value(SpacePoint::heisenberg(w))).epsilon(1e-12));
    CHECK(wide.slope(z) == doctest::Approx(unit.slope(SpacePoint::heisenberg(w)) / 3.0).epsilon(1e-10).scale(1e-14));
  }
}

TEST_CASE("Lipschitz property on random pairs") {
  Stream rng(5);
  const auto e2 = ModelSpace::euclidean(2);
  const auto eb = TestFunction::bump(SpacePoint::euclidean(vec({0, 0})), 1.0);
  const auto h = ModelSpace::heisenberg1();
  const auto hb = TestFunction::bump(SpacePoint::heisenberg({0, 0, 0}), 1.0);
  const auto hl = TestFunction::h1_horizontal_linear(1, 0);
  const auto s2 = ModelSpace::sphere2();
  const auto sh = TestFunction::sphere_height();
  const auto t2 = ModelSpace::torus(2, 2 * kPi);
  const auto sn = TestFunction::sine(2);
  int violations = 0;
  for (int i = 0; i < 2000; ++i) {
    const SpacePoint x = SpacePoint::euclidean(vec({rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)}));
    const SpacePoint y = SpacePoint::euclidean(vec({rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)}));
    if (std::abs(eb.value(x) - eb.value(y)) > eb.lipschitz_bound() * distance(e2, x, y) + 1e-12) ++violations;
    if (eb.slope(x) > eb.lipschitz_bound() * (1 + 1e-9)) ++violations;

    const SpacePoint z = SpacePoint::heisenberg({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)});
    const SpacePoint u = SpacePoint::heisenberg({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)});
    const double dzu = distance(h, z, u);
    if (std::abs(hb.value(z) - hb.value(u)) > hb.lipschitz_bound() * dzu + 1e-12) ++violations;
    if (hb.slope(z) > hb.lipschitz_bound() * (1 + 1e-9)) ++violations;
    if (std::abs(hl.value(z) - hl.value(u)) > dzu + 1e-12) ++violations;

    const SpacePoint a = sample_space(s2, rng), b = sample_space(s2, rng);
    if (std::abs(sh.value(a) - sh.value(b)) > distance(s2, a, b) + 1e-12) ++violations;
    const SpacePoint c = sample_space(t2, rng), d = sample_space(t2, rng);
    if (std::abs(sn.value(c) - sn.value(d)) > distance(t2, c, d) + 1e-12) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("bump Lipschitz constants against a dense grid") {
  double euclid = 0.0;
  for (int i = 1; i < 1000000; ++i) {
    const double s = i / 1e6;
    euclid = std::max(euclid, 2 * s * std::abs(bump_profile_derivative(s * s)));
  }
  CHECK(bump_lipschitz_unit() == doctest::Approx(euclid).epsilon(1e-9));

  // H^1: horizontal gradient (X1 t, X2 t) = (4 h w1 - 64 w2 w3, 4 h w2 + 64 w1 w3)
  // at w = (rho, 0, w3), scanned over the unit Koranyi ball.
  double koranyi = 0.0;
  for (int i = 1; i < 2000; ++i) {
    const double rho = i / 2000.0;
    for (int j = 0; j < 2000; ++j) {
      const double w3 = 0.25 * j / 2000.0;
      const double h = rho * rho;
      const double t = h * h + 16 * w3 * w3;
      if (t >= 1) break;
      const double x1 = 4 * h * rho, x2 = 64 * rho * w3;
      koranyi = std::max(koranyi, std::abs(bump_profile_derivative(t)) * std::hypot(x1, x2));
    }
  }
  CHECK(koranyi_bump_lipschitz_unit() >= koranyi);
  CHECK(koranyi_bump_lipschitz_unit() == doctest::Approx(koranyi).epsilon(1e-3));
  const auto hb = TestFunction::bump(SpacePoint::heisenberg({0, 0, 0}), 1.0);
  double seen = 0.0;
  for (int i = 0; i <= 400; ++i)
    for (int j = -200; j <= 200; ++j) seen = std::max(seen, hb.slope(SpacePoint::heisenberg({i / 400.0, 0, j / 800.0})));
  CHECK(seen <= hb.lipschitz_bound() * (1 + 1e-9));
  CHECK(seen >= 0.99 * hb.lipschitz_bound());
}

TEST_CASE("bump support") {
  const auto f = TestFunction::bump(SpacePoint::euclidean(vec({1, 2, 3})), 0.5);
  const Support s = f.support();
  REQUIRE(s.kind == Support::Kind::box);
  CHECK(s.box_volume() == doctest::Approx(1.0));
  CHECK(f.value(SpacePoint::euclidean(vec({1, 2, 3}))) == 1.0);
  CHECK(f.value(SpacePoint::euclidean(vec({1.5, 2, 3}))) == 0.0);
  CHECK(f.value(SpacePoint::euclidean(vec({1.4, 2.4, 3}))) == 0.0);  // outside the ball, inside the box
  CHECK(s.contains(SpacePoint::euclidean(vec({1.4, 2.4, 3}))));

  const auto g = TestFunction::bump(SpacePoint::heisenberg({1, 2, 3}), 2.0);
  const Support sh = g.support();
  CHECK(sh.half_width[2] == 1.0);
  CHECK(sh.box_volume() == doctest::Approx(4 * 4 * 2));
  // Left-translated box: the anchor's group law, not vector addition.
  const heisenberg::HPoint w(1.5, -1.5, 0.9);
  const SpacePoint inside = sh.at(w);
  CHECK(sh.contains(inside));
  CHECK((sh.local(inside) - w).norm() < 1e-12);
  Stream rng(6);
  for (int i = 0; i < 2000; ++i) {
    const SpacePoint z = SpacePoint::heisenberg({rng.uniform(-4, 6), rng.uniform(-3, 7), rng.uniform(-20, 26)});
    if (!sh.contains(z)) CHECK(g.value(z) == 0.0);
  }

  CHECK(TestFunction::constant(0).support().kind == Support::Kind::empty);
  CHECK(f.scaled(0).support().kind == Support::Kind::empty);
}

TEST_CASE("scaling is exact") {
  const auto f = TestFunction::bump(SpacePoint::heisenberg({0, 0, 0}), 1.0);
  const auto g = f.scaled(2.0);
  Stream rng(7);
  for (int i = 0; i < 100; ++i) {
    const SpacePoint z = SpacePoint::heisenberg({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)});
    CHECK(g.value(z) == 2.0 * f.value(z));
    CHECK(g.slope(z) == 2.0 * f.slope(z));
  }
  CHECK(g.lipschitz_bound() == 2.0 * f.lipschitz_bound());
}

TEST_CASE("space compatibility") {
  CHECK_NOTHROW(TestFunction::sine(1).check_space(ModelSpace::torus(2, 4 * kPi)));
  CHECK_THROWS_AS(TestFunction::sine(1).check_space(ModelSpace::torus(2, 1.0)), DomainError);
  CHECK_THROWS_AS(TestFunction::sine(3).check_space(ModelSpace::torus(2, 2 * kPi)), DomainError);
  CHECK_THROWS_AS(TestFunction::sphere_height().check_space(ModelSpace::euclidean(3)), DomainError);
  CHECK_THROWS_AS(TestFunction::linear(vec({1, 0})).check_space(ModelSpace::euclidean(3)), DomainError);
  CHECK_THROWS_AS(TestFunction::h1_horizontal_linear(1, 0).check_space(ModelSpace::euclidean(3)), DomainError);
  CHECK_THROWS_AS(TestFunction::bump(SpacePoint::euclidean(vec({0, 0})), 1.0).check_space(ModelSpace::heisenberg1()),
                  DomainError);
  CHECK_THROWS_AS(TestFunction::bump(SpacePoint::euclidean(vec({0})), -1.0), DomainError);
}

TEST_CASE("preset parsing") {
  const PresetSpec s = PresetSpec::parse("bump:radius=4:center=0,6,0,0");
  CHECK(s.kind == "bump");
  CHECK(s.scalar("radius") == 4.0);
  CHECK(s.list("center") == std::vector<double>{0, 6, 0, 0});
  CHECK(s.to_string() == "bump:center=0,6,0,0:radius=4");
  CHECK(PresetSpec::parse(s.to_string()) == s);
  CHECK(PresetSpec::parse("sphere2").params.empty());
  CHECK(PresetSpec::parse("torus:period=0.1").to_string() == "torus:period=0.1");

  CHECK_THROWS_AS(PresetSpec::parse(""), UsageError);
  CHECK_THROWS_AS(PresetSpec::parse("torus:n"), UsageError);
  CHECK_THROWS_AS(PresetSpec::parse("torus:n=two"), UsageError);
  CHECK_THROWS_AS(PresetSpec::parse("torus:n=2:n=3"), UsageError);
  CHECK_THROWS_AS(PresetSpec::parse("torus:n=2,").only({"n"}), UsageError);
}

TEST_CASE("space and function presets") {
  const ModelSpace t = make_space(PresetSpec::parse("torus:n=3"));
  CHECK(t.kind() == SpaceKind::torus);
  CHECK(t.dimension() == 3);
  CHECK(t.period() == doctest::Approx(2 * kPi));

  const ModelSpace w = make_space(PresetSpec::parse("weighted:n=2:amp=0.25"));
  CHECK(w.weight(vec({0, 0})) == doctest::Approx(1.25));
  CHECK(w.weight_lower() == 1.0);
  CHECK(w.weight_upper() == 1.25);

  CHECK_THROWS_AS(make_space(PresetSpec::parse("klein")), UsageError);
  CHECK_THROWS_AS(make_space(PresetSpec::parse("torus:n=2:radius=1")), UsageError);
  CHECK_THROWS_AS(make_space(PresetSpec::parse("euclidean:n=0")), UsageError);

  const ModelSpace g = make_space(PresetSpec::parse("glued"));
  const TestFunction fe = make_test_function(PresetSpec::parse("bump:center=0,6,0,0:radius=4"), g);
  CHECK(fe.center().side == glued::Side::euclidean4);
  const TestFunction fh = make_test_function(PresetSpec::parse("bump:center=0,10,0:radius=8"), g);
  CHECK(fh.center().side == glued::Side::heisenberg1);

  const TestFunction scaled = make_test_function(PresetSpec::parse("sine:axis=1:scale=3"), t);
  CHECK(scaled.amplitude() == 3.0);
  CHECK_THROWS_AS(make_test_function(PresetSpec::parse("sine:axis=1.5"), t), UsageError);
  CHECK_THROWS_AS(make_test_function(PresetSpec::parse("sine:axis=1"), make_space(PresetSpec::parse("torus:n=2:period=1"))),
                  UsageError);
}
