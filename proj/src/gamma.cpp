#include "sonine/gamma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sonine/error.hpp"

namespace sonine {
namespace {

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // Split the power so t^(z+1/2) cannot overflow before exp(-t) scales it.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (std::exp(-t) * half) * series;
}

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) throw DomainError("gamma: argument must be positive and finite, got " + std::to_string(x));
  if (x > 171.0) throw DomainError("gamma: argument overflows double precision");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  return lanczos(x);
}

double beta(double a, double b) { return gamma(a) * gamma(b) / gamma(a + b); }

double kappa(double alpha0) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw DomainError("kappa: alpha0 must lie in (0,1)");
  // Canonical ordering: hi = max(a, 1-a) is the same double for a and for
  // fl(1-a), and 1 - hi is exact (Sterbenz), so kappa(a) == kappa(1-a).
  const double hi = std::max(alpha0, 1.0 - alpha0);
  const double lo = 1.0 - hi;
  return gamma(lo) * gamma(hi);
}

}  // namespace sonine
