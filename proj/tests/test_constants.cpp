#include "bbm/constants.hpp"

#include <cmath>

#include "bbm/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bbm;

TEST_CASE("closed-form C_{p,N}") {
  CHECK(c_euclidean_closed(4, 4) == 0.0625);
  CHECK(c_euclidean_closed(2, 2) == doctest::Approx(0.25).epsilon(1e-15));
  // p = 2: the ball average of z1^2 is 1 / (N + 2).
  for (int n : {1, 3, 7, 120}) CHECK(c_euclidean_closed(2, n) == doctest::Approx(1.0 / (n + 2)).epsilon(1e-12));
  // N = 1: \int_0^1 x^p dx.
  for (double p : {1.5, 3.0, 6.5}) CHECK(c_euclidean_closed(p, 1) == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
  // N = 2 by polar quadrature: (1 / pi) \int |cos|^p \int rho^{p+1}.
  for (double p : {1.5, 3.0}) {
    const double angular = oracle::simpson([p](double t) { return std::pow(std::abs(std::cos(t)), p); }, 0, 2 * oracle::kPi, 20000);
    CHECK(c_euclidean_closed(p, 2) == doctest::Approx(angular / (oracle::kPi * (p + 2))).epsilon(1e-9));
  }
  CHECK_THROWS_AS(c_euclidean_closed(1.0, 2), DomainError);
  CHECK_THROWS_AS(c_euclidean_closed(2.0, 0), DomainError);
}

TEST_CASE("Monte-Carlo C_{p,N} agrees with the closed form") {
  for (auto [p, n] : {std::pair{2.0, 2}, {4.0, 4}, {3.0, 3}, {2.5, 5}}) {
    const EnergyEstimate e = c_euclidean_mc(p, n, 200000, Stream(1));
    CHECK_MESSAGE(std::abs(e.value - c_euclidean_closed(p, n)) <= 3 * e.std_error, "p = " << p << " N = " << n);
    const oracle::McResult brute = oracle::euclidean_constant_brute_force(p, n, 200000, 9);
    CHECK(std::abs(brute.mean - c_euclidean_closed(p, n)) <= 3 * brute.sigma);
  }
  const EnergyEstimate big = c_euclidean_mc(4, 4, 1000000, Stream(2));
  CHECK(big.std_error < 1e-3);
  CHECK(big.samples == 1000000);
  // Any unit direction gives the same constant.
  Eigen::VectorXd v(3);
  v << 0.48, 0.6, 0.64;
  const EnergyEstimate tilted = c_euclidean_mc(3, 3, 200000, Stream(3), {}, v);
  CHECK(std::abs(tilted.value - c_euclidean_closed(3, 3)) <= 3 * tilted.std_error);
  CHECK_THROWS_AS(c_euclidean_mc(2, 2, 999, Stream(1)), DomainError);
}

TEST_CASE("Monte-Carlo C_{p,H^1} against a boundary-parametrization oracle") {
  for (double p : {2.0, 4.0}) {
    const EnergyEstimate e = c_heisenberg_mc(p, 400000, Stream(4));
    CHECK_MESSAGE(std::abs(e.value - oracle::heisenberg_constant(p)) <= 3 * e.std_error, "p = " << p);
  }
  const EnergyEstimate rotated = c_heisenberg_mc(4, 400000, Stream(5), {}, Eigen::Vector2d(0.6, -0.8));
  CHECK(std::abs(rotated.value - oracle::heisenberg_constant(4)) <= 3 * rotated.std_error);
  CHECK(oracle::heisenberg_constant(4) == doctest::Approx(0.106).epsilon(0.05));
  CHECK_THROWS_AS(c_heisenberg_mc(4, 400000, Stream(5), {}, Eigen::Vector2d(1, 1)), DomainError);
}

TEST_CASE("radial moment and K_{p,N}") {
  CHECK(radial_moment(2, 3) == doctest::Approx(0.6));
  CHECK(radial_moment(0, 5) == 1.0);
  for (auto [p, n] : {std::pair{2.0, 2}, {4.0, 4}, {3.0, 3}}) {
    const EnergyEstimate m = radial_moment_mc(p, n, 200000, Stream(6));
    CHECK(std::abs(m.value - radial_moment(p, n)) <= 3 * m.std_error);
    const EnergyEstimate k = k_sphere_mc(p, n, 400000, Stream(7));
    CHECK(std::abs(c_euclidean_closed(p, n) - radial_moment(p, n) * k.value) <= 3 * radial_moment(p, n) * k.std_error);
    CHECK(k_bbm(p, n) == doctest::Approx(c_euclidean_closed(p, n) / radial_moment(p, n)));
  }
  // K_{2,N} = 1 / N: the second moment of one coordinate on the sphere.
  CHECK(k_bbm(2, 5) == doctest::Approx(0.2));
}

TEST_CASE("abs_pow") {
  CHECK(abs_pow(-3.0, 2) == 9.0);
  CHECK(abs_pow(0.0, 4) == 0.0);
  CHECK(abs_pow(2.0, 0.5) == doctest::Approx(std::sqrt(2.0)));
  Stream rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-10, 10);
    for (double p : {1.0, 2.0, 3.0, 4.0, 7.0}) {
      CHECK(abs_pow(2 * x, p) == std::pow(2.0, p) * abs_pow(x, p));
      CHECK(abs_pow(x, p) == doctest::Approx(std::pow(std::abs(x), p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("Monte-Carlo results do not depend on the worker count") {
  const EnergyEstimate a = c_heisenberg_mc(4, 50000, Stream(9), {1});
  const EnergyEstimate b = c_heisenberg_mc(4, 50000, Stream(9), {4});
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}
