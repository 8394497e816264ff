#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sonine/exec.hpp"
#include "sonine/kernels.hpp"
#include "sonine/mesh.hpp"
#include "sonine/sonine.hpp"

namespace sonine {

/// Right-hand side f in C^1[0, b] with its derivative and f(0).
struct RhsSpec {
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  double f0 = 0.0;

  /// Checks f0 == f(0) and spot-checks fprime against central differences.
  void validate(double b) const;
  /// f + delta.
  RhsSpec shifted(double delta) const;

  /// f(t) = sum_n c_n t^n.
  static RhsSpec polynomial(std::vector<double> coefficients);
};

struct SolveOptions {
  GscOptions gsc{};
  /// Interior nodes excluded from residual max-norms (t_1, t_2 by default).
  std::size_t skip_nodes = 2;
  Exec exec = Exec::parallel;
};

struct SolveReport {
  SampledFunction u;
  SampledFunction F;  // d/dt (K * f) = f(0) K + K * f'
  Mesh mesh;
  double residual_first_kind = 0.0;   // max over the window of |(k*u) - f|
  double residual_second_kind = 0.0;  // max row-relative residual of the discrete system
  double gprime_l1 = 0.0;
  double gprime_exponent = 0.0;       // eps used for the g' product weights
  std::size_t window_start = 3;       // first node in the reporting window
  std::vector<double> first_kind_residuals;  // |(k*u)(t_i) - f(t_i)|, NaN outside the window
  /// Filled by discover_associate: max over the window of |(u*k)(t_i) - 1|.
  double sc_residual_of_u = 0.0;
  std::vector<double> associate_residuals;
};

/// F(t_i) = f(0) K(t_i) + (K * f')(t_i).
SampledFunction assemble_rhs(const KernelSpec& K, const RhsSpec& rhs, const Mesh& mesh, Exec exec = Exec::parallel);

/// Lower-triangular product-integration system for u + g' * u = F.
///
/// u is carried as y^-p U(y) with p the singular exponent of F, g' as
/// tau^-eps G(tau) with eps = gprime.sing_exponent. Rows are assembled in
/// parallel; the forward substitution is sequential.
class SecondKindSystem {
 public:
  SecondKindSystem(const SampledFunction& gprime, double solution_exponent, Exec exec = Exec::parallel);

  SampledFunction solve(const SampledFunction& F) const;
  /// max_i |u_i + (g' * u)_i - F_i| / (|u_i| + |(g'*u)_i| + |F_i|).
  double residual(const SampledFunction& F, const SampledFunction& u) const;
  bool trivial() const { return trivial_; }

 private:
  double row_sum(std::size_t i, const std::vector<double>& U, std::size_t upto) const;
  double weight(std::size_t i, std::size_t j) const { return weights_[i * (i + 1) / 2 + j]; }

  Mesh mesh_;
  double exponent_;
  bool trivial_ = false;
  std::vector<double> weights_;  // packed rows 1..N (row 0 unused)
};

/// Solves u + int_0^t g'(t - y) u(y) dy = F(t) by forward substitution.
SampledFunction solve_second_kind(const SampledFunction& gprime, const SampledFunction& F, const Mesh& mesh,
                                  Exec exec = Exec::parallel);

/// First-kind equation k * u = f through the second-kind reformulation.
/// Throws GscFailure when the pair fails the gSC check.
SolveReport solve_first_kind(const SoninePair& pair, const RhsSpec& rhs, const Mesh& mesh, const SolveOptions& opts = {});
SolveReport solve_first_kind(const SoninePair& pair, const GscReport& gsc, const RhsSpec& rhs, const Mesh& mesh,
                             const SolveOptions& opts = {});

/// Solves k * u = 1; u is then a classical Sonine associate of k.
SolveReport discover_associate(const KernelSpec& k, const KernelSpec& Kg, const Mesh& mesh, const SolveOptions& opts = {});

struct StabilityReport {
  double du = 0.0;  // max |u(f + delta) - u(f)| over the reporting window
  double dF = 0.0;  // max |F(f + delta) - F(f)| over the same window
  double gprime_l1 = 0.0;
  double bound = 0.0;  // exp(gprime_l1) * dF
  bool holds = false;
  std::vector<double> du_nodes;
  std::vector<double> dF_nodes;
};

/// Perturbs f by a constant delta and compares against the discrete Gronwall bound.
StabilityReport stability_probe(const SoninePair& pair, const RhsSpec& rhs, double delta, const Mesh& mesh,
                                const SolveOptions& opts = {});

/// Closed-form solution of t^-a * u = sum_n c_n t^n:
/// u(t) = sum_n c_n n! t^(n+a-1) / (Gamma(n+a) Gamma(1-a)).
std::function<double(double)> classical_abel_solution(double alpha, const std::vector<double>& coefficients);

struct ConvergenceRow {
  std::size_t N = 0;
  double h = 0.0;
  double max_err = 0.0;
  double order = 0.0;  // NaN on the first row or at the roundoff floor
  double residual_first_kind = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double fitted_order = 0.0;  // least-squares slope of -log(err) vs log(N)
  bool at_roundoff_floor = false;
  bool residual_decreasing = false;  // residual_first_kind drops by >= 1.5 per doubling
};

/// Error floor below which errors count as roundoff and no order is fitted.
inline constexpr double kRoundoffFloor = 1e-12;

/// Refinement study. With `exact`, max_err is the max relative error of u on
/// nodes t >= b/10; otherwise it is residual_first_kind.
ConvergenceStudy convergence_study(const SoninePair& pair, const RhsSpec& rhs, const std::vector<std::size_t>& Ns,
                                   double grading, const std::optional<std::function<double(double)>>& exact,
                                   const SolveOptions& opts = {});

}  // namespace sonine
