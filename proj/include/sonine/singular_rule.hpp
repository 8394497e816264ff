#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sonine/gauss_rules.hpp"
#include "sonine/mesh.hpp"

namespace sonine {

/// Product-integration weights for
///
///   I_i[U] = integral_0^{t_i} (t_i - y)^-q R(t_i - y) y^-p U(y) dy
///
/// with U piecewise linear on the mesh and R a bounded regular factor known
/// pointwise. Row i yields c_{i,0..i} with I_i[U] ~= sum_j c_{i,j} U(t_j).
///
/// The known factors are integrated by Gauss rules: Gauss-Jacobi on pieces
/// touching y = 0 or y = t_i, Gauss-Legendre elsewhere. Pieces are bisected
/// until their width does not exceed their distance to a singular end, so
/// graded meshes with very unequal neighbouring panels stay accurate.
class SingularRule {
 public:
  SingularRule(Mesh mesh, double right_exponent, double left_exponent, int order = 10);

  const Mesh& mesh() const { return mesh_; }
  double right_exponent() const { return right_; }
  double left_exponent() const { return left_; }

  /// Fills out[0..i] (resized to i + 1).
  void row(std::size_t i, const std::function<double(double)>& right_regular, std::vector<double>& out) const;

 private:
  struct Piece;
  void integrate(const Piece& piece, const std::function<double(double)>& R, std::vector<double>& out, int depth) const;
  const QuadratureRule& rule_for(bool near_zero, bool near_end) const;

  Mesh mesh_;
  double right_;
  double left_;
  QuadratureRule plain_;
  QuadratureRule at_end_;
  QuadratureRule at_zero_;
  QuadratureRule both_;
};

}  // namespace sonine
