#include "bbm/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <vector>

#include "bbm/errors.hpp"

namespace bbm {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  // Symmetrize: the exact rule is symmetric about 0.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

BoxIntegral integrate_box(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                          int panels, const GaussRule& rule) {
  const auto dim = lower.size();
  const auto per_axis = static_cast<Eigen::Index>(panels) * rule.nodes.size();
  // 1-D composite abscissae and weights for each axis.
  std::vector<Eigen::VectorXd> xs(dim), ws(dim);
  for (Eigen::Index d = 0; d < dim; ++d) {
    xs[d].resize(per_axis);
    ws[d].resize(per_axis);
    const double width = (upper[d] - lower[d]) / panels;
    for (int k = 0; k < panels; ++k) {
      const double mid = lower[d] + (k + 0.5) * width;
      for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        xs[d][k * rule.nodes.size() + i] = mid + 0.5 * width * rule.nodes[i];
        ws[d][k * rule.nodes.size() + i] = 0.5 * width * rule.weights[i];
      }
    }
  }
  std::vector<Eigen::Index> index(dim, 0);
  Eigen::VectorXd point(dim);
  double total = 0.0;
  std::size_t evaluations = 0;
  while (true) {
    double weight = 1.0;
    for (Eigen::Index d = 0; d < dim; ++d) {
      point[d] = xs[d][index[d]];
      weight *= ws[d][index[d]];
    }
    total += weight * f(point);
    ++evaluations;
    Eigen::Index d = 0;
    for (; d < dim; ++d) {
      if (++index[d] < per_axis) break;
      index[d] = 0;
    }
    if (d == dim) break;
  }
  return {total, evaluations};
}

}  // namespace bbm
