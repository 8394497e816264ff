#include "sonine/sonine.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sonine/error.hpp"
#include "sonine/product_rule.hpp"
#include "sonine/singular_rule.hpp"

namespace sonine {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Weights c_m with sum_m c_m phi(z_m) ~= int_0^1 z^-a0 (1-z)^(a0-1) phi(z) dz
// for piecewise linear phi. The left half is graded toward z = 0, where the
// integrands carry z ln z terms; the right half is uniform.
class ZForm {
 public:
  ZForm(double alpha0, std::size_t M) {
    if (M < 16) throw DomainError("z-form quadrature needs at least 16 panels per half");
    std::vector<double> z;
    z.reserve(2 * M + 1);
    const double m_total = static_cast<double>(M);
    for (std::size_t m = 0; m <= M; ++m) {
      const double x = static_cast<double>(m) / m_total;
      z.push_back(0.5 * x * x);
    }
    for (std::size_t m = 1; m <= M; ++m) z.push_back(0.5 + 0.5 * static_cast<double>(m) / m_total);
    z.back() = 1.0;
    const Mesh zmesh = Mesh::from_nodes(std::move(z));
    const SingularRule rule(zmesh, 1.0 - alpha0, alpha0);
    rule.row(zmesh.intervals(), [](double) { return 1.0; }, weights_);
    nodes_.assign(zmesh.nodes().begin(), zmesh.nodes().end());
  }

  template <class Phi>
  double integrate(Phi&& phi) const {
    KahanSum acc;
    for (std::size_t m = 0; m < nodes_.size(); ++m) acc.add(weights_[m] * phi(nodes_[m]));
    return acc.value();
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

const ExponentFunction& require_exponent(const SoninePair& pair, const char* who) {
  if (!pair.exponent)
    throw DomainError(std::string(who) + ": pair carries no exponent function (not a variable-exponent Abel pair)");
  return *pair.exponent;
}

// (s)^(a0 - a(s)), the regular factor of the substituted integrand.
double regular_factor(const ExponentFunction& alpha, double a0, double s) {
  return s > 0.0 ? std::pow(s, a0 - alpha(s)) : 1.0;
}

// z * d/dt (tz)^(a0 - a(tz)) written in s = tz to avoid dividing a0 - a(s) by s.
double regular_factor_derivative(const ExponentFunction& alpha, double a0, double t, double z) {
  const double s = t * z;
  if (!(s > 0.0)) return 0.0;
  const double bracket = -alpha.derivative(s) * s * std::log(s) + (a0 - alpha(s));
  if (bracket == 0.0) return 0.0;
  return regular_factor(alpha, a0, s) * bracket / t;
}

// Second-order three-point derivative on a non-uniform mesh.
SampledFunction finite_difference_gprime(const SampledFunction& g) {
  const Mesh& mesh = g.mesh;
  const std::size_t N = mesh.intervals();
  std::vector<double> d(N + 1, kNaN);
  auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
    const double x0 = mesh[a], x1 = mesh[b], x2 = mesh[c];
    const double f0 = g.values[a], f1 = g.values[b], f2 = g.values[c];
    const double l0 = (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (2.0 * at - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return l0 * f0 + l1 * f1 + l2 * f2;
  };
  for (std::size_t i = 1; i < N; ++i) d[i] = three_point(i - 1, i, i + 1, mesh[i]);
  d[N] = three_point(N - 2, N - 1, N, mesh[N]);
  return SampledFunction(mesh, std::move(d));
}

}  // namespace

double compute_g_substituted(const SoninePair& pair, double t, std::size_t M) {
  const ExponentFunction& alpha = require_exponent(pair, "compute_g_substituted");
  if (!(t > 0.0) || t > pair.k.horizon() * (1.0 + 1e-12)) throw DomainError("compute_g_substituted: t must lie in (0, b]");
  const double a0 = alpha.at_zero();
  const ZForm zform(a0, M);
  return zform.integrate([&](double z) { return regular_factor(alpha, a0, t * z); }) / pair.kappa;
}

double estimate_g0(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw DomainError("estimate_g0: need at least three samples");
  for (const auto& [t, g] : samples)
    if (!(t > 0.0) || !std::isfinite(g)) throw DomainError("estimate_g0: samples need t > 0 and finite g");
  const double q = samples[1].first / samples[0].first;
  if (!(q > 0.0 && q < 1.0)) throw DomainError("estimate_g0: t must decrease toward 0");
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double qk = samples[k].first / samples[k - 1].first;
    if (std::abs(qk - q) > 1e-6 * q) throw DomainError("estimate_g0: sample abscissae are not geometric");
  }

  // Fit deviations from the sample nearest 0; constant data gives exactly 0.
  const double ref = samples.back().second;
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = samples[static_cast<std::size_t>(k)].first;
    A(k, 0) = 1.0;
    A(k, 1) = t * std::abs(std::log(t));
    A(k, 2) = t;
    rhs(k) = samples[static_cast<std::size_t>(k)].second - ref;
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(rhs);
  return ref + coef(0);
}

SampledFunction estimate_gprime(const SoninePair& pair, const Mesh& mesh, std::size_t M, Exec exec) {
  const ExponentFunction& alpha = require_exponent(pair, "estimate_gprime");
  if (mesh.horizon() > pair.k.horizon() * (1.0 + 1e-12)) throw DomainError("estimate_gprime: mesh exceeds the horizon");
  const double a0 = alpha.at_zero();
  const std::size_t N = mesh.intervals();
  std::vector<double> d(N + 1, kNaN);
  if (alpha.is_constant()) {
    std::fill(d.begin() + 1, d.end(), 0.0);
    return SampledFunction(mesh, std::move(d));
  }
  const ZForm zform(a0, M);
  for_each_row(exec, 1, N + 1, [&](std::size_t i) {
    const double t = mesh[i];
    d[i] = zform.integrate([&](double z) { return regular_factor_derivative(alpha, a0, t, z); }) / pair.kappa;
  });
  return SampledFunction(mesh, std::move(d));
}

EpsFit fit_eps(const SampledFunction& gprime, double eps_bound, const GscOptions& opts) {
  const Mesh& mesh = gprime.mesh;
  const double b = mesh.horizon();
  std::vector<double> xs;
  std::vector<double> ys;
  double peak = 0.0;
  for (std::size_t i = 2; i < mesh.size(); ++i) {
    if (mesh[i] > 0.25 * b) break;
    if (!gprime.defined(i)) continue;
    const double v = std::abs(gprime.values[i]);
    peak = std::max(peak, v);
    if (v > 0.0) {
      xs.push_back(std::log(mesh[i]));
      ys.push_back(std::log(v));
    }
  }
  EpsFit fit;
  if (peak <= opts.flat_tol) {
    fit.C = peak;
    fit.eps = 0.0;
    fit.r_squared = 1.0;
    fit.flat = true;
    fit.pass = true;
    return fit;
  }
  if (xs.size() < 3) throw DomainError("fit_eps: mesh too coarse for the t^-eps fit (fewer than 3 nodes in [t_2, b/4])");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  fit.eps = -slope;
  fit.C = std::exp(my - slope * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.pass = fit.eps <= eps_bound - opts.eps_margin && fit.r_squared >= opts.min_r_squared;
  return fit;
}

GscReport check_gsc(const SoninePair& pair, const Mesh& mesh, const GscOptions& opts) {
  const double b = pair.k.horizon();
  if (std::abs(mesh.horizon() - b) > 1e-12 * b) throw DomainError("check_gsc: mesh horizon differs from the pair horizon");
  const std::size_t N = mesh.intervals();

  SampledFunction g = convolve_pair(pair.K, pair.k, mesh, opts.pair, opts.exec);

  // g(0) from a geometric sequence approaching 0.
  std::vector<std::pair<double, double>> head;
  for (int k = 3; k <= 11; ++k) {
    const double t = b * std::ldexp(1.0, -k);
    const double gt = pair.exponent ? compute_g_substituted(pair, t, opts.z_panels)
                                    : convolve_pair_at(pair.K, pair.k, t, opts.pair);
    head.emplace_back(t, gt);
  }
  const double g0 = estimate_g0(head);
  g.values[0] = g0;

  double route_gap = kNaN;
  SampledFunction gprime = pair.exponent ? estimate_gprime(pair, mesh, opts.z_panels, opts.exec)
                                         : finite_difference_gprime(g);
  if (pair.exponent) {
    const ExponentFunction& alpha = *pair.exponent;
    const double a0 = alpha.at_zero();
    const ZForm zform(a0, opts.z_panels);
    std::vector<double> gap(N + 1, 0.0);
    for_each_row(opts.exec, 1, N + 1, [&](std::size_t i) {
      const double t = mesh[i];
      const double gz = zform.integrate([&](double z) { return regular_factor(alpha, a0, t * z); }) / pair.kappa;
      gap[i] = std::abs(gz - g.values[i]);
    });
    route_gap = *std::max_element(gap.begin(), gap.end());
  }

  const double eps_bound = pair.exponent ? 1.0 - pair.exponent->at_zero() : 1.0;
  const EpsFit fit = fit_eps(gprime, eps_bound, opts);

  // Complete the head of g' for the second-kind solve: g'(t) = t^-eps G(t).
  const double eps_used = fit.flat ? 0.0 : std::max(fit.eps, 0.0);
  if (eps_used > 0.0 && eps_used < 1.0) {
    gprime.sing_exponent = eps_used;
    gprime.head_limit = std::copysign(fit.C, gprime.values[1]);
  } else {
    gprime.values[0] = gprime.values[1];
  }

  double l1 = std::numeric_limits<double>::infinity();
  if (eps_used < 1.0) {
    const std::vector<double> nodes(mesh.nodes().begin(), mesh.nodes().end());
    const std::vector<double> w = left_singular_weights(nodes, 1.0 - eps_used);
    KahanSum acc;
    for (std::size_t j = 0; j <= N; ++j) acc.add(w[j] * std::abs(gprime.regular_node(j)));
    l1 = acc.value();
  }

  double sc = 0.0;
  for (std::size_t i = 1; i <= N; ++i) sc = std::max(sc, std::abs(g.values[i] - 1.0));

  GscReport report{std::move(g), std::move(gprime), 0.0, 0.0, 0.0, 0.0, 0.0, EpsFit{}, false, false, false};
  report.g0 = g0;
  report.sc_residual = sc;
  report.g0_defect = std::abs(g0 - 1.0);
  report.gprime_l1 = l1;
  report.route_gap = route_gap;
  report.eps_fit = fit;
  report.analytic_gprime = pair.exponent.has_value();
  report.sc_pass = sc <= opts.sc_tol;
  report.gsc_pass = report.g0_defect <= opts.g0_tol && std::isfinite(l1);
  return report;
}

}  // namespace sonine
