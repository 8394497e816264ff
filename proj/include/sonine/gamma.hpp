#pragma once

namespace sonine {

/// Gamma function for 0 < x <= 171 (relative error below 1e-13 on (0, 50]).
/// Throws DomainError for x <= 0, non-finite x, or overflow.
double gamma(double x);

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta(double a, double b);

/// kappa(a) = Gamma(a) Gamma(1 - a), the normalization of the associate
/// kernel t^(a-1)/kappa. Symmetric in a <-> 1 - a bit for bit.
double kappa(double alpha0);

}  // namespace sonine
