#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>

namespace bbm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule from the eigen-decomposition of the Jacobi
/// matrix (Golub-Welsch).
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <class F>
double integrate(F&& f, double a, double b, int panels, const GaussRule& rule) {
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    double panel = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
      panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * panel;
  }
  return total;
}

/// Tensor-product composite Gauss-Legendre over the box [lower, upper].
/// Returns the integral and the number of integrand evaluations.
struct BoxIntegral {
  double value;
  std::size_t evaluations;
};
BoxIntegral integrate_box(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                          int panels, const GaussRule& rule);

}  // namespace bbm
