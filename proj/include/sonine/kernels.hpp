#pragma once

#include <functional>
#include <optional>

#include "sonine/mesh.hpp"

namespace sonine {

/// Variable exponent alpha(t) on [0, b] with declared bounds and Lipschitz
/// constant L >= sup |alpha'|. L == 0 declares a constant exponent.
struct ExponentFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double lipschitz = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;

  double operator()(double t) const { return value(t); }
  double at_zero() const { return value(0.0); }
  bool is_constant() const { return lipschitz == 0.0; }

  /// Spot-checks the declared bounds on a 1024-point grid over [0, b].
  void verify(double b) const;

  static ExponentFunction constant(double alpha);
  /// alpha(t) = a0 + a1 t with bounds taken over [0, b].
  static ExponentFunction affine(double a0, double a1, double b);
};

enum class KernelKind { classical_abel, variable_exponent_abel, power, tabulated };

const char* to_string(KernelKind kind);

/// Weakly singular kernel k(t) = t^-p R(t) on (0, b].
///
/// The leading exponent p is the one product rules factor out, and R is the
/// regular part with a finite limit R(0). sing_exponent is the declared
/// worst-case exponent used for mesh grading; it is >= p.
class KernelSpec {
 public:
  /// c t^-p, kind power (or classical_abel when c == 1).
  static KernelSpec power(double coeff, double exponent, double b);
  /// t^-alpha(t); factored with p = alpha(0), R(t) = t^(alpha(0) - alpha(t)).
  static KernelSpec variable_exponent(const ExponentFunction& alpha, double b);
  /// Kernel read off a sampled function (its regular part is interpolated).
  static KernelSpec tabulated(const SampledFunction& samples);

  /// k(t) for t in (0, b]; t = 0 is a domain error.
  double operator()(double t) const;
  /// R(t) on [0, b], including the limit at t = 0.
  double regular(double t) const { return regular_(t); }

  double leading_exponent() const { return leading_; }
  double sing_exponent() const { return sing_; }
  double horizon() const { return b_; }
  KernelKind kind() const { return kind_; }
  /// Coefficient c for pure power kernels (NaN otherwise).
  double coefficient() const { return coeff_; }
  const std::optional<ExponentFunction>& exponent() const { return exponent_; }

 private:
  KernelSpec() = default;

  std::function<double(double)> regular_;
  double leading_ = 0.0;
  double sing_ = 0.0;
  double b_ = 0.0;
  double coeff_ = 0.0;
  KernelKind kind_ = KernelKind::power;
  std::optional<ExponentFunction> exponent_;
};

/// (k, K) with K * k = g. When exponent is set, K is the associate
/// t^(alpha(0)-1) / kappa of the variable-exponent kernel k.
struct SoninePair {
  KernelSpec k;
  KernelSpec K;
  double kappa;
  bool is_classical;
  std::optional<ExponentFunction> exponent;
};

SoninePair make_classical_abel_pair(double alpha, double b);
SoninePair make_variable_exponent_pair(const ExponentFunction& alpha, double b);
/// Arbitrary pair. Recognizes the variable-exponent / associate structure and
/// attaches the exponent function so the analytic routes can be used.
SoninePair make_pair(const KernelSpec& k, const KernelSpec& K);

}  // namespace sonine
