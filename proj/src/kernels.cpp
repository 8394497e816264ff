#include "sonine/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sonine/error.hpp"
#include "sonine/gamma.hpp"

namespace sonine {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_horizon(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("kernel horizon b must be positive and finite");
}

void check_argument(double t, double b) {
  if (!(t > 0.0)) throw DomainError("kernel evaluated at t <= 0 (the singular endpoint)");
  if (t > b * (1.0 + 1e-12)) throw DomainError("kernel evaluated beyond its horizon b");
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

void ExponentFunction::verify(double b) const {
  check_horizon(b);
  if (!value || !derivative) throw DomainError("exponent function needs both value and derivative maps");
  if (!(alpha_lo > 0.0 && alpha_lo <= alpha_hi && alpha_hi < 1.0))
    throw DomainError("exponent bounds must satisfy 0 < alpha_lo <= alpha_hi < 1");
  if (!(lipschitz >= 0.0)) throw DomainError("Lipschitz constant must be non-negative");
  constexpr int kGrid = 1024;
  const double slack = 1e-12;
  for (int m = 0; m < kGrid; ++m) {
    const double t = b * static_cast<double>(m) / (kGrid - 1);
    const double a = value(t);
    const double da = derivative(t);
    if (!std::isfinite(a) || a < alpha_lo - slack || a > alpha_hi + slack)
      throw DomainError("alpha(" + std::to_string(t) + ") = " + std::to_string(a) + " leaves the declared range [" +
                        std::to_string(alpha_lo) + ", " + std::to_string(alpha_hi) + "]");
    if (!std::isfinite(da) || std::abs(da) > lipschitz + slack)
      throw DomainError("|alpha'(" + std::to_string(t) + ")| exceeds the declared Lipschitz constant");
  }
}

ExponentFunction ExponentFunction::constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("constant exponent must lie in (0,1)");
  return {[alpha](double) { return alpha; }, [](double) { return 0.0; }, 0.0, alpha, alpha};
}

ExponentFunction ExponentFunction::affine(double a0, double a1, double b) {
  check_horizon(b);
  const double end = a0 + a1 * b;
  const double lo = std::min(a0, end);
  const double hi = std::max(a0, end);
  if (!(lo > 0.0 && hi < 1.0))
    throw DomainError("affine exponent a0 + a1 t leaves (0,1) on [0,b]: range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return {[a0, a1](double t) { return a0 + a1 * t; }, [a1](double) { return a1; }, std::abs(a1), lo, hi};
}

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::classical_abel: return "classical_abel";
    case KernelKind::variable_exponent_abel: return "variable_exponent_abel";
    case KernelKind::power: return "power";
    case KernelKind::tabulated: return "tabulated";
  }
  return "unknown";
}

KernelSpec KernelSpec::power(double coeff, double exponent, double b) {
  check_horizon(b);
  if (!(exponent > 0.0 && exponent < 1.0)) throw DomainError("power kernel exponent must lie in (0,1)");
  if (!std::isfinite(coeff) || coeff == 0.0) throw DomainError("power kernel coefficient must be finite and non-zero");
  KernelSpec k;
  k.regular_ = [coeff](double) { return coeff; };
  k.leading_ = exponent;
  k.sing_ = exponent;
  k.b_ = b;
  k.coeff_ = coeff;
  k.kind_ = coeff == 1.0 ? KernelKind::classical_abel : KernelKind::power;
  return k;
}

KernelSpec KernelSpec::variable_exponent(const ExponentFunction& alpha, double b) {
  alpha.verify(b);
  KernelSpec k;
  const double a0 = alpha.at_zero();
  k.regular_ = [alpha, a0](double t) { return t > 0.0 ? std::pow(t, a0 - alpha(t)) : 1.0; };
  k.leading_ = a0;
  k.sing_ = alpha.alpha_hi;
  k.b_ = b;
  k.coeff_ = kNaN;
  k.kind_ = KernelKind::variable_exponent_abel;
  k.exponent_ = alpha;
  return k;
}

KernelSpec KernelSpec::tabulated(const SampledFunction& samples) {
  samples.validate();
  KernelSpec k;
  k.regular_ = [samples](double t) { return samples.regular_at(t); };
  k.leading_ = samples.sing_exponent;
  k.sing_ = samples.sing_exponent;
  k.b_ = samples.mesh.horizon();
  k.coeff_ = kNaN;
  k.kind_ = KernelKind::tabulated;
  return k;
}

double KernelSpec::operator()(double t) const {
  check_argument(t, b_);
  if (kind_ == KernelKind::variable_exponent_abel) return std::pow(t, -(*exponent_)(t));
  if (kind_ == KernelKind::classical_abel) return std::pow(t, -leading_);
  if (kind_ == KernelKind::power) return coeff_ * std::pow(t, -leading_);
  const double reg = regular_(t);
  return leading_ == 0.0 ? reg : std::pow(t, -leading_) * reg;
}

SoninePair make_classical_abel_pair(double alpha, double b) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("classical Abel exponent must lie in (0,1)");
  check_horizon(b);
  const double kap = kappa(alpha);
  return {KernelSpec::power(1.0, alpha, b), KernelSpec::power(1.0 / kap, 1.0 - alpha, b), kap, true,
          ExponentFunction::constant(alpha)};
}

SoninePair make_variable_exponent_pair(const ExponentFunction& alpha, double b) {
  KernelSpec k = KernelSpec::variable_exponent(alpha, b);
  const double a0 = alpha.at_zero();
  const double kap = kappa(a0);
  return {std::move(k), KernelSpec::power(1.0 / kap, 1.0 - a0, b), kap, alpha.is_constant(), alpha};
}

SoninePair make_pair(const KernelSpec& k, const KernelSpec& K) {
  if (!close_rel(k.horizon(), K.horizon(), 1e-15)) throw DomainError("pair kernels must share the horizon b");
  const bool K_power = K.kind() == KernelKind::power || K.kind() == KernelKind::classical_abel;
  if (K_power) {
    if (k.exponent()) {
      const double a0 = k.exponent()->at_zero();
      const double kap = kappa(a0);
      if (std::abs(K.leading_exponent() - (1.0 - a0)) <= 1e-14 && close_rel(K.coefficient(), 1.0 / kap, 1e-12))
        return {k, K, kap, k.exponent()->is_constant(), k.exponent()};
    }
    const bool k_power = k.kind() == KernelKind::power || k.kind() == KernelKind::classical_abel;
    if (k_power && k.coefficient() == 1.0) {
      const double p = k.leading_exponent();
      if (std::abs(K.leading_exponent() - (1.0 - p)) <= 1e-14 && close_rel(K.coefficient(), 1.0 / kappa(p), 1e-12))
        return {k, K, kappa(p), true, ExponentFunction::constant(p)};
    }
  }
  return {k, K, kNaN, false, std::nullopt};
}

}  // namespace sonine
