#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "sonine/convolution.hpp"
#include "sonine/exec.hpp"
#include "sonine/kernels.hpp"
#include "sonine/mesh.hpp"

namespace sonine {

/// Least-squares fit |g'(t)| ~ C t^-eps near t = 0.
struct EpsFit {
  double C = 0.0;
  double eps = 0.0;
  double r_squared = 0.0;
  bool pass = false;
  /// g' vanishes on the fit window (below the flatness threshold); eps = 0.
  bool flat = false;
};

struct GscOptions {
  PairQuadrature pair{};
  std::size_t z_panels = 256;
  double sc_tol = 1e-4;
  double g0_tol = 1e-3;
  double flat_tol = 1e-6;
  double eps_margin = 0.01;
  double min_r_squared = 0.9;
  Exec exec = Exec::parallel;
};

struct GscReport {
  SampledFunction g;       // K * k on the mesh; g(t_0) = extrapolated g0
  SampledFunction gprime;  // head completed for use in the second-kind solve
  double g0 = 0.0;
  double sc_residual = 0.0;  // max_i |g(t_i) - 1|
  double g0_defect = 0.0;    // |g0 - 1|
  double gprime_l1 = 0.0;    // integral_0^b |g'|
  double route_gap = 0.0;    // max_i |g_conv - g_z|, NaN without the z-form route
  EpsFit eps_fit;
  bool analytic_gprime = false;
  bool sc_pass = false;   // classical Sonine condition within sc_tol
  bool gsc_pass = false;  // g(0) = 1 within g0_tol and g' integrable
};

/// g(t) from the substituted form
///   g(t) = (1/kappa) int_0^1 (tz)^(a0 - a(tz)) (1-z)^(a0-1) z^(-a0) dz
/// with M panels per half of [0, 1]. Requires an exponent function on the pair.
double compute_g_substituted(const SoninePair& pair, double t, std::size_t M = 256);

/// Extrapolates g(0) from samples with t decreasing geometrically, fitting
/// g(t) = g0 + c1 t|ln t| + c2 t (exact interpolation for three samples).
double estimate_g0(std::span<const std::pair<double, double>> samples);

/// g'(t_i) by differentiating the substituted integrand under the integral
/// sign. g'(t_0) is undefined.
SampledFunction estimate_gprime(const SoninePair& pair, const Mesh& mesh, std::size_t M = 256,
                                Exec exec = Exec::parallel);

/// Fits ln|g'| = ln C - eps ln t over t_2 <= t <= b/4.
EpsFit fit_eps(const SampledFunction& gprime, double eps_bound, const GscOptions& opts = {});

GscReport check_gsc(const SoninePair& pair, const Mesh& mesh, const GscOptions& opts = {});

}  // namespace sonine
