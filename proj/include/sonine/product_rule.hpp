#pragma once

#include <cstddef>
#include <vector>

#include "sonine/mesh.hpp"

namespace sonine {

/// Weights of one panel for the integral of sigma^(beta-1) times a linear
/// function, over sigma in [near, far] with 0 <= near < far. `near_node` is
/// the weight of the end closer to the singularity at sigma = 0.
struct PanelWeights {
  double near_node;
  double far_node;
};

/// Closed-form antiderivatives, evaluated without cancellation for panels far
/// from the singular point (expm1/log1p and a positive series).
PanelWeights singular_panel_weights(double near, double far, double beta);

/// Integral of sigma^(beta-1) over [near, far].
double singular_panel_mass(double near, double far, double beta);

/// w_{i,j}, j = 0..i, with sum_j w_{i,j} phi(t_j) equal to
/// integral_0^{t_i} (t_i - s)^(beta-1) phi(s) ds for piecewise linear phi.
std::vector<double> product_weights(const Mesh& mesh, std::size_t i, double beta);

/// Piecewise-constant-left variant: phi(s) = phi(t_j) on [t_j, t_{j+1}).
/// Weights are non-negative; entry i is zero.
std::vector<double> product_weights_constant(const Mesh& mesh, std::size_t i, double beta);

/// Weights for integral_{nodes[0]}^{nodes.back()} (s - nodes[0])^(beta-1) phi(s) ds,
/// singular at the left end, phi piecewise linear on the given nodes.
std::vector<double> left_singular_weights(const std::vector<double>& nodes, double beta);

}  // namespace sonine
