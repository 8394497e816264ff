#include "sonine/gauss_rules.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sonine/error.hpp"
#include "sonine/gamma.hpp"

namespace sonine {

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1 || n > 64) throw DomainError("gauss_jacobi: 1 <= n <= 64");
  if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

  // Monic Jacobi recurrence for (1-x)^a (1+x)^b on [-1, 1].
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 1));
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    diag(k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    // For k = 1 the factor (k + a + b) cancels against (s - 1); keep it
    // cancelled so a + b = -1 stays finite.
    const double num = k == 1 ? 4.0 * (1.0 + a) * (1.0 + b) : 4.0 * kk * (kk + a) * (kk + b) * (kk + ab);
    const double den = k == 1 ? s * s * (s + 1.0) : s * s * (s + 1.0) * (s - 1.0);
    off(k - 1) = std::sqrt(num / den);
  }

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Total mass of (1-s)^a s^b on [0, 1].
  const double mass = beta(a + 1.0, b + 1.0);
  if (n == 1) {
    rule.nodes[0] = 0.5 * (1.0 + diag(0));
    rule.weights[0] = mass;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw DomainError("gauss_jacobi: eigenvalue iteration failed");
  for (int k = 0; k < n; ++k) {
    const double v0 = solver.eigenvectors()(0, k);
    rule.nodes[k] = 0.5 * (1.0 + solver.eigenvalues()(k));
    rule.weights[k] = mass * v0 * v0;
  }
  return rule;
}

}  // namespace sonine
