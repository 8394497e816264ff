#include "sonine/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sonine/error.hpp"

namespace sonine {

Mesh Mesh::from_nodes(std::vector<double> nodes, double grading) {
  if (nodes.size() < 3) throw DomainError("mesh needs at least two intervals");
  if (nodes.front() != 0.0) throw DomainError("mesh must start at t = 0");
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!(nodes[j] > nodes[j - 1]) || !std::isfinite(nodes[j]))
      throw DomainError("mesh nodes must be finite and strictly increasing");
  }
  return Mesh(std::make_shared<const std::vector<double>>(std::move(nodes)), grading);
}

std::size_t Mesh::panel_of(double t) const {
  const auto& n = *nodes_;
  if (t <= n.front()) return 0;
  if (t >= n.back()) return n.size() - 2;
  const auto it = std::upper_bound(n.begin(), n.end(), t);
  return static_cast<std::size_t>(it - n.begin()) - 1;
}

bool Mesh::same_as(const Mesh& other) const {
  return nodes_ == other.nodes_ || *nodes_ == *other.nodes_;
}

Mesh graded_mesh(std::size_t N, double r, double b) {
  if (N < 2) throw DomainError("graded_mesh: N must be at least 2");
  if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("graded_mesh: grading r must be >= 1");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("graded_mesh: horizon b must be positive");
  std::vector<double> nodes(N + 1);
  const double n = static_cast<double>(N);
  for (std::size_t j = 0; j <= N; ++j) nodes[j] = b * std::pow(static_cast<double>(j) / n, r);
  nodes[N] = b;
  return Mesh::from_nodes(std::move(nodes), r);
}

double default_grading(std::initializer_list<double> sing_exponents) {
  double worst = 0.0;
  for (double p : sing_exponents) worst = std::max(worst, p);
  if (!(worst < 1.0)) throw DomainError("default_grading: singular exponents must be below 1");
  return std::clamp(2.0 / (1.0 - worst), 1.0, 4.0);
}

SampledFunction::SampledFunction(Mesh m, std::vector<double> v, Interp mode)
    : mesh(std::move(m)), values(std::move(v)), interp(mode) {
  if (values.size() != mesh.size())
    throw DomainError("sampled function has " + std::to_string(values.size()) + " values for " +
                      std::to_string(mesh.size()) + " nodes");
}

bool SampledFunction::defined(std::size_t j) const { return std::isfinite(values[j]); }

double SampledFunction::regular_node(std::size_t j) const {
  if (j == 0) return sing_exponent > 0.0 ? head_limit : values[0];
  if (sing_exponent == 0.0) return values[j];
  return std::pow(mesh[j], sing_exponent) * values[j];
}

double SampledFunction::regular_at(double t) const {
  const std::size_t j = mesh.panel_of(t);
  if (interp == Interp::piecewise_constant_left) return regular_node(j);
  const double a = mesh[j];
  const double h = mesh[j + 1] - a;
  const double lam = std::clamp((t - a) / h, 0.0, 1.0);
  const double left = regular_node(j);
  const double right = regular_node(j + 1);
  if (lam == 0.0) return left;
  if (lam == 1.0) return right;
  return left + lam * (right - left);
}

double SampledFunction::operator()(double t) const {
  const double reg = regular_at(t);
  if (sing_exponent == 0.0) return reg;
  if (!(t > 0.0)) throw DomainError("singular sampled function evaluated at t = 0");
  return std::pow(t, -sing_exponent) * reg;
}

void SampledFunction::validate() const {
  if (values.size() != mesh.size()) throw DomainError("sampled function length does not match mesh");
  if (!(sing_exponent >= 0.0 && sing_exponent < 1.0))
    throw DomainError("sampled function singular exponent must lie in [0,1)");
  for (std::size_t j = 1; j < values.size(); ++j)
    if (!std::isfinite(values[j])) throw DomainError("sampled function value at node " + std::to_string(j) + " is not finite");
}

}  // namespace sonine
