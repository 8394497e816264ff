#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <vector>

namespace sonine {

/// Time mesh 0 = t_0 < t_1 < ... < t_N = b. Copies share the node storage.
class Mesh {
 public:
  /// Takes arbitrary strictly increasing nodes starting at 0.
  static Mesh from_nodes(std::vector<double> nodes, double grading = 1.0);

  std::size_t intervals() const { return nodes_->size() - 1; }
  std::size_t size() const { return nodes_->size(); }
  double operator[](std::size_t j) const { return (*nodes_)[j]; }
  std::span<const double> nodes() const { return *nodes_; }
  double horizon() const { return nodes_->back(); }
  double grading() const { return grading_; }

  /// Index j of the panel [t_j, t_{j+1}] containing t (clamped to the mesh).
  std::size_t panel_of(double t) const;

  bool same_as(const Mesh& other) const;

 private:
  Mesh(std::shared_ptr<const std::vector<double>> nodes, double grading)
      : nodes_(std::move(nodes)), grading_(grading) {}

  std::shared_ptr<const std::vector<double>> nodes_;
  double grading_ = 1.0;
};

/// t_j = b (j/N)^r. Throws DomainError for N < 2, r < 1 or b <= 0.
Mesh graded_mesh(std::size_t N, double r, double b);

/// Grading exponent 2 / (1 - max exponent), clamped to [1, 4].
double default_grading(std::initializer_list<double> sing_exponents);

enum class Interp { piecewise_linear, piecewise_constant_left };

/// Nodal samples of a function f on a mesh.
///
/// A weakly singular f(t) ~ t^-p is stored with sing_exponent = p: values[0]
/// is NaN (undefined) and head_limit holds lim_{t->0} t^p f(t). Interpolation
/// acts on the regular part t^p f(t), which is what product rules consume.
struct SampledFunction {
  Mesh mesh;
  std::vector<double> values;
  Interp interp = Interp::piecewise_linear;
  double sing_exponent = 0.0;
  double head_limit = std::numeric_limits<double>::quiet_NaN();

  SampledFunction(Mesh m, std::vector<double> v, Interp mode = Interp::piecewise_linear);

  bool defined(std::size_t j) const;
  /// t_j^p f(t_j), with head_limit (or values[0]) at j = 0.
  double regular_node(std::size_t j) const;
  /// Interpolated regular part at t in [0, b].
  double regular_at(double t) const;
  /// Interpolated value t^-p * regular_at(t); t > 0 when p > 0.
  double operator()(double t) const;
  /// Throws DomainError when the invariants are violated.
  void validate() const;
};

}  // namespace sonine
