#pragma once

#include <vector>

namespace sonine {

/// Nodes and weights on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule for the weight (1 - s)^a s^b on [0, 1], a, b > -1
/// (Golub-Welsch on the Jacobi recurrence).
QuadratureRule gauss_jacobi(int n, double a, double b);

inline QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace sonine
