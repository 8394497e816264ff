#include "sonine/convolution.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "sonine/error.hpp"
#include "sonine/product_rule.hpp"
#include "sonine/singular_rule.hpp"

namespace sonine {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_weakly_singular(const KernelSpec& k, const char* who) {
  const double p = k.leading_exponent();
  if (!(p > 0.0 && p < 1.0))
    throw DomainError(std::string(who) + ": kernel exponent must lie in (0,1), got " + std::to_string(p));
}

// Normalized half rule: nodes (m/M)^rho on [0, 1], weights for s^(beta-1).
struct HalfRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double beta;
};

HalfRule make_half_rule(const PairQuadrature& quad, double beta) {
  if (quad.panels < 4) throw DomainError("convolve_pair: need at least 4 panels per half");
  if (!(quad.grading >= 1.0)) throw DomainError("convolve_pair: sub-mesh grading must be >= 1");
  HalfRule rule;
  rule.beta = beta;
  rule.nodes.resize(quad.panels + 1);
  const double M = static_cast<double>(quad.panels);
  for (std::size_t m = 0; m <= quad.panels; ++m) rule.nodes[m] = std::pow(static_cast<double>(m) / M, quad.grading);
  rule.nodes.back() = 1.0;
  rule.weights = left_singular_weights(rule.nodes, beta);
  return rule;
}

class PairEvaluator {
 public:
  PairEvaluator(const KernelSpec& K, const KernelSpec& k, const PairQuadrature& quad)
      : K_(K), k_(k), left_(make_half_rule(quad, 1.0 - k.leading_exponent())),
        right_(make_half_rule(quad, 1.0 - K.leading_exponent())) {
    const double pK = K.leading_exponent();
    const double pk = k.leading_exponent();
    if (!(pK >= 0.0 && pK < 1.0) || !(pk >= 0.0 && pk < 1.0))
      throw DomainError("convolve_pair: singular exponents must lie in [0,1)");
    if (!(pK + pk < 2.0)) throw DomainError("convolve_pair: exponents must sum below 2");
    if (std::abs(K.horizon() - k.horizon()) > 1e-15 * K.horizon())
      throw DomainError("convolve_pair: kernels must share the horizon");
  }

  double operator()(double t) const {
    if (!(t > 0.0) || t > K_.horizon() * (1.0 + 1e-12)) throw DomainError("convolve_pair: t must lie in (0, b]");
    const double half = 0.5 * t;
    // [0, t/2]: s^-p_k exact, K(t - s) R_k(s) interpolated.
    KahanSum left;
    for (std::size_t m = 0; m < left_.nodes.size(); ++m) {
      const double s = half * left_.nodes[m];
      left.add(left_.weights[m] * K_(t - s) * k_.regular(s));
    }
    // [t/2, t] in sigma = t - s: sigma^-p_K exact, R_K(sigma) k(t - sigma) interpolated.
    KahanSum right;
    for (std::size_t m = 0; m < right_.nodes.size(); ++m) {
      const double sigma = half * right_.nodes[m];
      right.add(right_.weights[m] * K_.regular(sigma) * k_(t - sigma));
    }
    return std::pow(half, left_.beta) * left.value() + std::pow(half, right_.beta) * right.value();
  }

 private:
  const KernelSpec& K_;
  const KernelSpec& k_;
  HalfRule left_;
  HalfRule right_;
};

}  // namespace

SampledFunction convolve_weakly_singular(const KernelSpec& kernel, const SampledFunction& phi, const Mesh& mesh,
                                         Exec exec) {
  check_weakly_singular(kernel, "convolve_weakly_singular");
  if (!phi.mesh.same_as(mesh)) throw DomainError("convolve_weakly_singular: phi lives on a different mesh");
  if (phi.sing_exponent != 0.0 || !phi.defined(0))
    throw DomainError("convolve_weakly_singular: phi is singular at t = 0; use convolve_pair or convolve_sampled");
  phi.validate();

  const double beta = 1.0 - kernel.leading_exponent();
  const std::size_t N = mesh.intervals();
  std::vector<double> out(N + 1, 0.0);
  for_each_row(exec, 1, N + 1, [&](std::size_t i) {
    const std::vector<double> w = product_weights(mesh, i, beta);
    const double ti = mesh[i];
    KahanSum acc;
    for (std::size_t j = 0; j <= i; ++j) acc.add(w[j] * kernel.regular(ti - mesh[j]) * phi.values[j]);
    out[i] = acc.value();
  });
  return SampledFunction(mesh, std::move(out));
}

SampledFunction convolve_sampled(const KernelSpec& kernel, const SampledFunction& u, Exec exec) {
  u.validate();
  const Mesh& mesh = u.mesh;
  if (std::abs(mesh.horizon() - kernel.horizon()) > 1e-12 * kernel.horizon())
    throw DomainError("convolve_sampled: kernel horizon differs from the mesh horizon");
  const SingularRule rule(mesh, kernel.leading_exponent(), u.sing_exponent);
  const std::size_t N = mesh.intervals();
  std::vector<double> out(N + 1, 0.0);
  std::vector<double> U(N + 1);
  for (std::size_t j = 0; j <= N; ++j) U[j] = u.regular_node(j);
  const std::function<double(double)> R = [&kernel](double tau) { return kernel.regular(tau); };
  for_each_row(exec, 1, N + 1, [&](std::size_t i) {
    std::vector<double> c;
    rule.row(i, R, c);
    KahanSum acc;
    for (std::size_t j = 0; j <= i; ++j) acc.add(c[j] * U[j]);
    out[i] = acc.value();
  });
  if (kernel.leading_exponent() + u.sing_exponent >= 1.0) out[0] = kNaN;
  return SampledFunction(mesh, std::move(out));
}

SampledFunction convolve_pair(const KernelSpec& K, const KernelSpec& k, const Mesh& mesh, const PairQuadrature& quad,
                              Exec exec) {
  const PairEvaluator eval(K, k, quad);
  if (mesh.horizon() > K.horizon() * (1.0 + 1e-12)) throw DomainError("convolve_pair: mesh extends beyond the kernel horizon");
  const std::size_t N = mesh.intervals();
  std::vector<double> g(N + 1, kNaN);
  for_each_row(exec, 1, N + 1, [&](std::size_t i) { g[i] = eval(mesh[i]); });
  return SampledFunction(mesh, std::move(g));
}

double convolve_pair_at(const KernelSpec& K, const KernelSpec& k, double t, const PairQuadrature& quad) {
  return PairEvaluator(K, k, quad)(t);
}

}  // namespace sonine
