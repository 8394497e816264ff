#include "sonine/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "sonine/convolution.hpp"
#include "sonine/error.hpp"
#include "sonine/gamma.hpp"
#include "sonine/singular_rule.hpp"

namespace sonine {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMinPivot = 1e-8;

double window_max(const std::vector<double>& v, std::size_t from) {
  double m = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) m = std::max(m, v[i]);
  return m;
}

}  // namespace

void RhsSpec::validate(double b) const {
  if (!f || !fprime) throw DomainError("rhs needs both f and f'");
  if (!std::isfinite(f0) || f0 != f(0.0)) throw DomainError("rhs: f0 must equal f(0)");
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> pick(0.05 * b, 0.95 * b);
  const double h = 1e-6 * b;
  for (int k = 0; k < 16; ++k) {
    const double t = pick(rng);
    const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
    if (std::abs(fd - fprime(t)) > 1e-5)
      throw DomainError("rhs: f' disagrees with central differences of f at t = " + std::to_string(t));
  }
}

RhsSpec RhsSpec::shifted(double delta) const {
  auto base = f;
  return {[base, delta](double t) { return base(t) + delta; }, fprime, f0 + delta};
}

RhsSpec RhsSpec::polynomial(std::vector<double> c) {
  if (c.empty()) c.push_back(0.0);
  for (double x : c)
    if (!std::isfinite(x)) throw DomainError("rhs polynomial coefficients must be finite");
  auto value = [c](double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  auto deriv = [c](double t) {
    double acc = 0.0;
    for (std::size_t n = c.size() - 1; n >= 1; --n) acc = acc * t + static_cast<double>(n) * c[n];
    return acc;
  };
  return {value, deriv, c[0]};
}

SampledFunction assemble_rhs(const KernelSpec& K, const RhsSpec& rhs, const Mesh& mesh, Exec exec) {
  if (std::abs(mesh.horizon() - K.horizon()) > 1e-12 * K.horizon())
    throw DomainError("assemble_rhs: mesh horizon differs from the kernel horizon");
  std::vector<double> fp(mesh.size());
  for (std::size_t j = 0; j < mesh.size(); ++j) fp[j] = rhs.fprime(mesh[j]);
  SampledFunction F = convolve_weakly_singular(K, SampledFunction(mesh, std::move(fp)), mesh, exec);
  if (rhs.f0 != 0.0) {
    for (std::size_t i = 1; i < mesh.size(); ++i) F.values[i] += rhs.f0 * K(mesh[i]);
    F.values[0] = kNaN;
    F.sing_exponent = K.leading_exponent();
    F.head_limit = rhs.f0 * K.regular(0.0);
  }
  return F;
}

SecondKindSystem::SecondKindSystem(const SampledFunction& gprime, double solution_exponent, Exec exec)
    : mesh_(gprime.mesh), exponent_(solution_exponent) {
  if (!(exponent_ >= 0.0 && exponent_ < 1.0)) throw DomainError("second-kind solve: solution exponent must lie in [0,1)");
  const std::size_t N = mesh_.intervals();
  for (std::size_t j = 1; j <= N; ++j)
    if (!gprime.defined(j)) throw DomainError("second-kind solve: g' undefined at node " + std::to_string(j));
  const double head = gprime.regular_node(0);
  if (!std::isfinite(head)) throw DomainError("second-kind solve: g' needs a finite head value or limit");

  trivial_ = head == 0.0 && std::all_of(gprime.values.begin() + 1, gprime.values.end(), [](double v) { return v == 0.0; });
  if (trivial_) return;

  weights_.assign((N + 1) * (N + 2) / 2, 0.0);
  const SingularRule rule(mesh_, gprime.sing_exponent, exponent_);
  const std::function<double(double)> G = [&gprime](double tau) { return gprime.regular_at(tau); };
  for_each_row(exec, 1, N + 1, [&](std::size_t i) {
    std::vector<double> c;
    rule.row(i, G, c);
    std::copy(c.begin(), c.end(), weights_.begin() + static_cast<std::ptrdiff_t>(i * (i + 1) / 2));
  });
}

double SecondKindSystem::row_sum(std::size_t i, const std::vector<double>& U, std::size_t upto) const {
  KahanSum acc;
  for (std::size_t j = 0; j < upto; ++j) acc.add(weight(i, j) * U[j]);
  return acc.value();
}

SampledFunction SecondKindSystem::solve(const SampledFunction& F) const {
  if (!F.mesh.same_as(mesh_)) throw DomainError("second-kind solve: F and g' live on different meshes");
  if (F.sing_exponent != exponent_) throw DomainError("second-kind solve: F singular exponent does not match the system");
  F.validate();
  if (trivial_) return F;

  const std::size_t N = mesh_.intervals();
  std::vector<double> U(N + 1, 0.0);
  U[0] = F.regular_node(0);
  if (!std::isfinite(U[0])) throw DomainError("second-kind solve: F has no finite value or limit at t = 0");
  for (std::size_t i = 1; i <= N; ++i) {
    const double scale = exponent_ > 0.0 ? std::pow(mesh_[i], exponent_) : 1.0;
    const double diag = 1.0 + scale * weight(i, i);
    if (std::abs(diag) < kMinPivot)
      throw IllConditionedError("second-kind solve: pivot " + std::to_string(diag) + " at node " + std::to_string(i));
    U[i] = (F.regular_node(i) - scale * row_sum(i, U, i)) / diag;
  }

  std::vector<double> u(N + 1);
  u[0] = exponent_ > 0.0 ? kNaN : U[0];
  for (std::size_t i = 1; i <= N; ++i) u[i] = exponent_ > 0.0 ? std::pow(mesh_[i], -exponent_) * U[i] : U[i];
  SampledFunction out(mesh_, std::move(u));
  out.sing_exponent = exponent_;
  if (exponent_ > 0.0) out.head_limit = U[0];
  return out;
}

double SecondKindSystem::residual(const SampledFunction& F, const SampledFunction& u) const {
  const std::size_t N = mesh_.intervals();
  std::vector<double> U(N + 1);
  for (std::size_t j = 0; j <= N; ++j) U[j] = u.regular_node(j);
  double worst = 0.0;
  for (std::size_t i = 1; i <= N; ++i) {
    const double scale = exponent_ > 0.0 ? std::pow(mesh_[i], exponent_) : 1.0;
    const double conv = trivial_ ? 0.0 : scale * row_sum(i, U, i + 1);
    const double f = F.regular_node(i);
    const double denom = std::abs(U[i]) + std::abs(conv) + std::abs(f);
    if (denom > 0.0) worst = std::max(worst, std::abs(U[i] + conv - f) / denom);
  }
  return worst;
}

SampledFunction solve_second_kind(const SampledFunction& gprime, const SampledFunction& F, const Mesh& mesh, Exec exec) {
  if (!gprime.mesh.same_as(mesh) || !F.mesh.same_as(mesh)) throw DomainError("solve_second_kind: mesh mismatch");
  return SecondKindSystem(gprime, F.sing_exponent, exec).solve(F);
}

SolveReport solve_first_kind(const SoninePair& pair, const RhsSpec& rhs, const Mesh& mesh, const SolveOptions& opts) {
  return solve_first_kind(pair, check_gsc(pair, mesh, opts.gsc), rhs, mesh, opts);
}

SolveReport solve_first_kind(const SoninePair& pair, const GscReport& gsc, const RhsSpec& rhs, const Mesh& mesh,
                             const SolveOptions& opts) {
  const double b = pair.k.horizon();
  rhs.validate(b);
  if (!gsc.gprime.mesh.same_as(mesh)) throw DomainError("solve_first_kind: gSC report was computed on another mesh");
  if (!gsc.gsc_pass) {
    std::ostringstream msg;
    msg << "pair fails the generalized Sonine condition: g0_defect=" << gsc.g0_defect << " gprime_l1=" << gsc.gprime_l1
        << " eps=" << gsc.eps_fit.eps;
    throw GscFailure(msg.str());
  }

  SampledFunction F = assemble_rhs(pair.K, rhs, mesh, opts.exec);
  const SecondKindSystem system(gsc.gprime, F.sing_exponent, opts.exec);
  SampledFunction u = system.solve(F);
  const double res2 = system.residual(F, u);

  const SampledFunction ku = convolve_sampled(pair.k, u, opts.exec);
  const std::size_t start = opts.skip_nodes + 1;
  std::vector<double> res1(mesh.size(), kNaN);
  for (std::size_t i = start; i < mesh.size(); ++i) res1[i] = std::abs(ku.values[i] - rhs.f(mesh[i]));

  SolveReport report{std::move(u), std::move(F), mesh, 0.0, 0.0, 0.0, 0.0, 3, {}, 0.0, {}};
  report.residual_first_kind = window_max(std::vector<double>(res1.begin() + static_cast<std::ptrdiff_t>(std::min(start, res1.size())), res1.end()), 0);
  report.residual_second_kind = res2;
  report.gprime_l1 = gsc.gprime_l1;
  report.gprime_exponent = gsc.gprime.sing_exponent;
  report.window_start = start;
  report.first_kind_residuals = std::move(res1);
  report.sc_residual_of_u = kNaN;
  return report;
}

SolveReport discover_associate(const KernelSpec& k, const KernelSpec& Kg, const Mesh& mesh, const SolveOptions& opts) {
  const SoninePair pair = make_pair(k, Kg);
  const GscReport gsc = check_gsc(pair, mesh, opts.gsc);
  SolveReport report = solve_first_kind(pair, gsc, RhsSpec::polynomial({1.0}), mesh, opts);

  // Independent route: (u * k) by the half-split pair quadrature.
  const SampledFunction uk = convolve_pair(KernelSpec::tabulated(report.u), k, mesh, opts.gsc.pair, opts.exec);
  std::vector<double> res(mesh.size(), kNaN);
  double worst = 0.0;
  for (std::size_t i = report.window_start; i < mesh.size(); ++i) {
    res[i] = std::abs(uk.values[i] - 1.0);
    worst = std::max(worst, res[i]);
  }
  report.sc_residual_of_u = worst;
  report.associate_residuals = std::move(res);
  return report;
}

StabilityReport stability_probe(const SoninePair& pair, const RhsSpec& rhs, double delta, const Mesh& mesh,
                                const SolveOptions& opts) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("stability_probe: delta must be positive");
  const GscReport gsc = check_gsc(pair, mesh, opts.gsc);
  const SolveReport base = solve_first_kind(pair, gsc, rhs, mesh, opts);
  const SolveReport bumped = solve_first_kind(pair, gsc, rhs.shifted(delta), mesh, opts);

  StabilityReport out;
  out.du_nodes.assign(mesh.size(), kNaN);
  out.dF_nodes.assign(mesh.size(), kNaN);
  for (std::size_t i = base.window_start; i < mesh.size(); ++i) {
    out.du_nodes[i] = std::abs(bumped.u.values[i] - base.u.values[i]);
    out.dF_nodes[i] = std::abs(bumped.F.values[i] - base.F.values[i]);
    out.du = std::max(out.du, out.du_nodes[i]);
    out.dF = std::max(out.dF, out.dF_nodes[i]);
  }
  out.gprime_l1 = gsc.gprime_l1;
  out.bound = std::exp(gsc.gprime_l1) * out.dF;
  out.holds = out.du <= out.bound;
  return out;
}

std::function<double(double)> classical_abel_solution(double alpha, const std::vector<double>& coefficients) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("classical_abel_solution: alpha must lie in (0,1)");
  std::vector<double> scale(coefficients.size());
  double factorial = 1.0;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    if (n > 0) factorial *= static_cast<double>(n);
    const double nn = static_cast<double>(n);
    scale[n] = coefficients[n] * factorial / (gamma(nn + alpha) * gamma(1.0 - alpha));
  }
  return [scale, alpha](double t) {
    double acc = 0.0;
    for (std::size_t n = 0; n < scale.size(); ++n)
      if (scale[n] != 0.0) acc += scale[n] * std::pow(t, static_cast<double>(n) + alpha - 1.0);
    return acc;
  };
}

ConvergenceStudy convergence_study(const SoninePair& pair, const RhsSpec& rhs, const std::vector<std::size_t>& Ns,
                                   double grading, const std::optional<std::function<double(double)>>& exact,
                                   const SolveOptions& opts) {
  if (Ns.size() < 2) throw DomainError("convergence_study: need at least two mesh sizes");
  const double b = pair.k.horizon();
  ConvergenceStudy study;
  for (std::size_t N : Ns) {
    const Mesh mesh = graded_mesh(N, grading, b);
    const SolveReport rep = solve_first_kind(pair, rhs, mesh, opts);
    ConvergenceRow row;
    row.N = N;
    row.h = b / static_cast<double>(N);
    row.residual_first_kind = rep.residual_first_kind;
    if (exact) {
      double worst = 0.0;
      for (std::size_t i = 1; i < mesh.size(); ++i) {
        if (mesh[i] < 0.1 * b) continue;
        const double ref = (*exact)(mesh[i]);
        worst = std::max(worst, std::abs(rep.u.values[i] - ref) / std::abs(ref));
      }
      row.max_err = worst;
    } else {
      row.max_err = rep.residual_first_kind;
    }
    study.rows.push_back(row);
  }

  study.at_roundoff_floor = std::all_of(study.rows.begin(), study.rows.end(),
                                        [](const ConvergenceRow& r) { return r.max_err <= kRoundoffFloor; });
  study.residual_decreasing = true;
  for (std::size_t k = 0; k < study.rows.size(); ++k) {
    ConvergenceRow& r = study.rows[k];
    if (k == 0 || study.at_roundoff_floor) {
      r.order = kNaN;
    } else {
      const ConvergenceRow& p = study.rows[k - 1];
      r.order = std::log(p.max_err / r.max_err) / std::log(static_cast<double>(r.N) / static_cast<double>(p.N));
    }
    if (k > 0 && !(study.rows[k - 1].residual_first_kind >= 1.5 * r.residual_first_kind)) study.residual_decreasing = false;
  }

  if (study.at_roundoff_floor) {
    study.fitted_order = kNaN;
  } else {
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(study.rows.size());
    for (const auto& r : study.rows) {
      mx += std::log(static_cast<double>(r.N));
      my += std::log(r.max_err);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& r : study.rows) {
      const double x = std::log(static_cast<double>(r.N)) - mx;
      sxx += x * x;
      sxy += x * (std::log(r.max_err) - my);
    }
    study.fitted_order = -sxy / sxx;
  }
  return study;
}

}  // namespace sonine
