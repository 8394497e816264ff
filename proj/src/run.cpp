#include "sonine/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sonine/error.hpp"
#include "sonine/sonine.hpp"
#include "sonine/volterra.hpp"

namespace sonine {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string g3(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

SolveOptions solve_options(const JobConfig& job) {
  SolveOptions o;
  o.exec = job.exec;
  o.gsc.exec = job.exec;
  o.gsc.sc_tol = job.tolerance("sc_residual");
  o.gsc.g0_tol = job.tolerance("g0_defect");
  return o;
}

std::vector<std::string> columns_for(Command c) {
  switch (c) {
    case Command::verify_pair: return {"t", "g"};
    case Command::compute_g: return {"t", "g", "g_substituted", "gprime"};
    case Command::solve: return {"t", "u", "F", "residual"};
    case Command::discover: return {"t", "u", "associate_residual"};
    case Command::converge: return {"N", "h", "max_err", "order"};
    case Command::stability: return {"t", "du", "dF"};
  }
  return {};
}

void finish(RunResult& r, const JobConfig& job, const std::string& metrics) {
  r.summary = std::string(to_string(job.command)) + ": " + metrics + (r.pass ? " PASS" : " FAIL");
}

void add_gsc_scalars(RunResult& r, const GscReport& g) {
  r.scalars["sc_residual"] = g.sc_residual;
  r.scalars["g0"] = g.g0;
  r.scalars["g0_defect"] = g.g0_defect;
  r.scalars["gprime_l1"] = g.gprime_l1;
  r.scalars["route_gap"] = g.route_gap;
  r.scalars["eps"] = g.eps_fit.eps;
  r.scalars["eps_C"] = g.eps_fit.C;
  r.scalars["eps_r_squared"] = g.eps_fit.r_squared;
  r.scalars["eps_pass"] = g.eps_fit.pass;
  r.scalars["sc_pass"] = g.sc_pass;
  r.scalars["gsc_pass"] = g.gsc_pass;
}

RunResult verify_pair(const JobConfig& job, const SoninePair& pair, const Mesh& mesh) {
  const GscReport g = check_gsc(pair, mesh, solve_options(job).gsc);
  RunResult r;
  r.table.columns = columns_for(Command::verify_pair);
  for (std::size_t i = 0; i < mesh.size(); ++i) r.table.rows.push_back({mesh[i], g.g.values[i]});
  add_gsc_scalars(r, g);
  r.pass = pair.is_classical ? g.sc_residual <= job.tolerance("sc_residual") : g.gsc_pass;
  finish(r, job, "sc_residual=" + g3(g.sc_residual) + " g0_defect=" + g3(g.g0_defect) +
                     " gprime_l1=" + g3(g.gprime_l1));
  return r;
}

RunResult compute_g(const JobConfig& job, const SoninePair& pair, const Mesh& mesh) {
  const SolveOptions opts = solve_options(job);
  const GscReport g = check_gsc(pair, mesh, opts.gsc);
  std::vector<double> gz(mesh.size(), kNaN);
  if (pair.exponent) {
    for_each_row(job.exec, 1, mesh.size(),
                 [&](std::size_t i) { gz[i] = compute_g_substituted(pair, mesh[i], opts.gsc.z_panels); });
  }
  RunResult r;
  r.table.columns = columns_for(Command::compute_g);
  for (std::size_t i = 0; i < mesh.size(); ++i)
    r.table.rows.push_back({mesh[i], g.g.values[i], gz[i], i == 0 ? kNaN : g.gprime.values[i]});
  add_gsc_scalars(r, g);
  r.pass = g.gsc_pass && (std::isnan(g.route_gap) || g.route_gap <= job.tolerance("route_gap"));
  finish(r, job, "g0_defect=" + g3(g.g0_defect) + " route_gap=" + g3(g.route_gap) + " eps=" + g3(g.eps_fit.eps) +
                     " gprime_l1=" + g3(g.gprime_l1));
  return r;
}

void add_solve_scalars(RunResult& r, const SolveReport& s) {
  r.scalars["residual_first_kind"] = s.residual_first_kind;
  r.scalars["residual_second_kind"] = s.residual_second_kind;
  r.scalars["gprime_l1"] = s.gprime_l1;
  r.scalars["gprime_exponent"] = s.gprime_exponent;
  r.scalars["window_start"] = static_cast<double>(s.window_start);
  r.scalars["N"] = static_cast<double>(s.mesh.intervals());
}

RunResult solve(const JobConfig& job, const SoninePair& pair, const Mesh& mesh) {
  const SolveReport s = solve_first_kind(pair, RhsSpec::polynomial(job.rhs), mesh, solve_options(job));
  RunResult r;
  r.table.columns = columns_for(Command::solve);
  for (std::size_t i = 0; i < mesh.size(); ++i)
    r.table.rows.push_back({mesh[i], s.u.values[i], s.F.values[i], s.first_kind_residuals[i]});
  add_solve_scalars(r, s);
  r.pass = s.residual_first_kind <= job.tolerance("residual_first_kind");
  finish(r, job, "residual_first_kind=" + g3(s.residual_first_kind) +
                     " residual_second_kind=" + g3(s.residual_second_kind));
  return r;
}

RunResult discover(const JobConfig& job, const SoninePair& pair, const Mesh& mesh) {
  const SolveReport s = discover_associate(pair.k, pair.K, mesh, solve_options(job));
  RunResult r;
  r.table.columns = columns_for(Command::discover);
  for (std::size_t i = 0; i < mesh.size(); ++i) r.table.rows.push_back({mesh[i], s.u.values[i], s.associate_residuals[i]});
  add_solve_scalars(r, s);
  r.scalars["sc_residual_of_u"] = s.sc_residual_of_u;
  r.pass = s.sc_residual_of_u <= job.tolerance("sc_residual_of_u");
  finish(r, job, "sc_residual_of_u=" + g3(s.sc_residual_of_u) + " residual_first_kind=" + g3(s.residual_first_kind));
  return r;
}

RunResult converge(const JobConfig& job, const SoninePair& pair) {
  std::optional<std::function<double(double)>> exact;
  if (job.kernel.kind == "classical") exact = classical_abel_solution(job.kernel.alpha, job.rhs);
  const ConvergenceStudy st =
      convergence_study(pair, RhsSpec::polynomial(job.rhs), job.converge_N, mesh_grading(job), exact, solve_options(job));
  RunResult r;
  r.table.columns = columns_for(Command::converge);
  for (const auto& row : st.rows) r.table.rows.push_back({static_cast<double>(row.N), row.h, row.max_err, row.order});
  const double last = st.rows.back().max_err;
  r.scalars["fitted_order"] = st.fitted_order;
  r.scalars["max_err"] = last;
  r.scalars["at_roundoff_floor"] = st.at_roundoff_floor;
  r.scalars["residual_decreasing"] = st.residual_decreasing;
  if (exact) {
    r.pass = last <= job.tolerance("max_err") && (st.at_roundoff_floor || st.fitted_order >= job.tolerance("min_order"));
  } else {
    r.pass = st.residual_decreasing;
  }
  finish(r, job, "max_err=" + g3(last) + " fitted_order=" + (st.at_roundoff_floor ? "roundoff" : g3(st.fitted_order)));
  return r;
}

RunResult stability(const JobConfig& job, const SoninePair& pair, const Mesh& mesh) {
  const StabilityReport s = stability_probe(pair, RhsSpec::polynomial(job.rhs), job.delta, mesh, solve_options(job));
  RunResult r;
  r.table.columns = columns_for(Command::stability);
  for (std::size_t i = 0; i < mesh.size(); ++i) r.table.rows.push_back({mesh[i], s.du_nodes[i], s.dF_nodes[i]});
  r.scalars["du"] = s.du;
  r.scalars["dF"] = s.dF;
  r.scalars["gprime_l1"] = s.gprime_l1;
  r.scalars["bound"] = s.bound;
  r.scalars["delta"] = job.delta;
  r.pass = s.holds;
  finish(r, job, "du=" + g3(s.du) + " bound=" + g3(s.bound) + " gprime_l1=" + g3(s.gprime_l1));
  return r;
}

}  // namespace

RunResult execute(const JobConfig& job) {
  const SoninePair pair = build_pair(job.kernel);
  if (job.command == Command::converge) return converge(job, pair);
  const Mesh mesh = graded_mesh(job.mesh.N, mesh_grading(job), job.kernel.b);
  try {
    switch (job.command) {
      case Command::verify_pair: return verify_pair(job, pair, mesh);
      case Command::compute_g: return compute_g(job, pair, mesh);
      case Command::solve: return solve(job, pair, mesh);
      case Command::discover: return discover(job, pair, mesh);
      case Command::stability: return stability(job, pair, mesh);
      case Command::converge: break;
    }
  } catch (const GscFailure& e) {
    RunResult r;
    r.pass = false;
    r.table.columns = columns_for(job.command);
    r.summary = std::string(to_string(job.command)) + ": gSC check failed (" + e.what() + ") FAIL";
    return r;
  }
  throw std::logic_error("unhandled command");
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << g17(row[c]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const JobConfig& job, const RunResult& result) {
  nlohmann::ordered_json j;
  j["command"] = to_string(job.command);
  j["pass"] = result.pass;
  for (const auto& [k, v] : result.scalars) j[k] = v;
  for (std::size_t c = 0; c < result.table.columns.size(); ++c) {
    auto col = nlohmann::ordered_json::array();
    for (const auto& row : result.table.rows) col.push_back(row[c]);
    j[result.table.columns[c]] = std::move(col);
  }
  out << j.dump(2) << '\n';
}

int run(const JobConfig& job, std::ostream& summary) {
  const RunResult result = execute(job);
  auto emit = [&](std::ostream& out) {
    if (job.output.format == "json") {
      write_json(out, job, result);
    } else {
      write_csv(out, result.table);
    }
  };
  if (job.output.path.empty()) {
    emit(std::cout);
  } else {
    std::ofstream out(job.output.path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + job.output.path);
    emit(out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing output file " + job.output.path);
  }
  summary << result.summary << '\n';
  return result.exit_code();
}

}  // namespace sonine
