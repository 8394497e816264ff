#include "sonine/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "sonine/mesh.hpp"

namespace sonine {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

const json* member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& object_at(const json& obj, const char* key, const std::string& field) {
  const json& v = obj.at(key);
  if (!v.is_object()) fail(field, "expected an object");
  return v;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

std::size_t count(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected an integer");
  const double x = v.get<double>();
  if (!(x >= 0.0) || x != std::floor(x) || x > 1e9) fail(field, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void open_unit(double x, const std::string& field) {
  if (!(x > 0.0 && x < 1.0)) fail(field, "must lie in (0, 1), got " + fmt(x));
}

void parse_kernel(const json& j, KernelConfig& k) {
  reject_unknown(j, "kernel", {"kind", "alpha", "profile", "b", "k_exponent", "K_exponent", "K_coeff"});
  if (const json* v = member(j, "kind")) k.kind = text(*v, "kernel.kind");
  if (k.kind != "classical" && k.kind != "variable" && k.kind != "power")
    fail("kernel.kind", "expected classical, variable or power, got \"" + k.kind + "\"");
  if (const json* v = member(j, "b")) k.b = number(*v, "kernel.b");
  if (!(k.b > 0.0)) fail("kernel.b", "must be positive, got " + fmt(k.b));

  if (k.kind == "classical") {
    if (const json* v = member(j, "alpha")) k.alpha = number(*v, "kernel.alpha");
    open_unit(k.alpha, "kernel.alpha");
  } else if (k.kind == "variable") {
    if (!member(j, "profile")) fail("kernel.profile", "required for kind \"variable\"");
    const json& p = object_at(j, "profile", "kernel.profile");
    reject_unknown(p, "kernel.profile", {"a0", "a1"});
    if (const json* v = member(p, "a0")) k.a0 = number(*v, "kernel.profile.a0");
    if (const json* v = member(p, "a1")) k.a1 = number(*v, "kernel.profile.a1");
    open_unit(k.a0, "kernel.profile.a0");
    const double end = k.a0 + k.a1 * k.b;
    if (!(end > 0.0 && end < 1.0)) fail("kernel.profile", "alpha(b) = " + fmt(end) + " leaves (0, 1)");
  } else {
    if (const json* v = member(j, "k_exponent")) k.k_exponent = number(*v, "kernel.k_exponent");
    if (const json* v = member(j, "K_exponent")) k.K_exponent = number(*v, "kernel.K_exponent");
    if (const json* v = member(j, "K_coeff")) k.K_coeff = number(*v, "kernel.K_coeff");
    open_unit(k.k_exponent, "kernel.k_exponent");
    open_unit(k.K_exponent, "kernel.K_exponent");
    if (k.K_coeff == 0.0) fail("kernel.K_coeff", "must be non-zero");
  }
}

void parse_mesh(const json& j, MeshConfig& m) {
  reject_unknown(j, "mesh", {"N", "r"});
  if (const json* v = member(j, "N")) m.N = count(*v, "mesh.N");
  if (m.N < 2 || m.N > 65536) fail("mesh.N", "must lie in [2, 65536], got " + std::to_string(m.N));
  if (const json* v = member(j, "r")) {
    if (v->is_string()) {
      if (v->get<std::string>() != "auto") fail("mesh.r", "expected a number >= 1 or \"auto\"");
      m.r_auto = true;
    } else {
      m.r = number(*v, "mesh.r");
      if (!(m.r >= 1.0)) fail("mesh.r", "must be >= 1, got " + fmt(m.r));
    }
  }
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "verify-pair") return Command::verify_pair;
  if (name == "compute-g") return Command::compute_g;
  if (name == "solve") return Command::solve;
  if (name == "discover") return Command::discover;
  if (name == "converge") return Command::converge;
  if (name == "stability") return Command::stability;
  throw ConfigError("command: unknown command \"" + std::string(name) + "\"");
}

const char* to_string(Command c) {
  switch (c) {
    case Command::verify_pair: return "verify-pair";
    case Command::compute_g: return "compute-g";
    case Command::solve: return "solve";
    case Command::discover: return "discover";
    case Command::converge: return "converge";
    case Command::stability: return "stability";
  }
  return "?";
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table{
      {"sc_residual", 1e-4},         {"g0_defect", 1e-3},        {"route_gap", 5e-5},
      {"residual_first_kind", 5e-3}, {"sc_residual_of_u", 5e-3}, {"max_err", 1e-3},
      {"min_order", 0.8},
  };
  return table;
}

JobConfig parse_config(std::string_view doc) {
  json j;
  try {
    j = json::parse(doc);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, doc.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (doc[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (const auto cut = what.find("column "); cut != std::string::npos) {
      if (const auto colon = what.find(": ", cut); colon != std::string::npos) what = what.substr(colon + 2);
    }
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j, "", {"command", "kernel", "mesh", "rhs", "output", "tolerances", "converge", "stability", "exec"});

  JobConfig job;
  job.tolerances = default_tolerances();
  if (const json* v = member(j, "command")) job.command = parse_command(text(*v, "command"));
  if (!member(j, "kernel")) fail("kernel", "required");
  parse_kernel(object_at(j, "kernel", "kernel"), job.kernel);
  if (member(j, "mesh")) parse_mesh(object_at(j, "mesh", "mesh"), job.mesh);

  if (member(j, "rhs")) {
    const json& r = object_at(j, "rhs", "rhs");
    reject_unknown(r, "rhs", {"coefficients"});
    if (const json* c = member(r, "coefficients")) {
      if (!c->is_array() || c->empty()) fail("rhs.coefficients", "expected a non-empty array of numbers");
      job.rhs.clear();
      for (std::size_t i = 0; i < c->size(); ++i)
        job.rhs.push_back(number((*c)[i], "rhs.coefficients[" + std::to_string(i) + "]"));
    }
  }

  if (member(j, "output")) {
    const json& o = object_at(j, "output", "output");
    reject_unknown(o, "output", {"path", "format"});
    if (const json* v = member(o, "path")) job.output.path = text(*v, "output.path");
    if (const json* v = member(o, "format")) job.output.format = text(*v, "output.format");
  }
  if (job.output.format != "csv" && job.output.format != "json")
    fail("output.format", "expected csv or json, got \"" + job.output.format + "\"");

  if (member(j, "tolerances")) {
    const json& t = object_at(j, "tolerances", "tolerances");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string field = "tolerances." + it.key();
      if (!job.tolerances.count(it.key())) fail(field, "unknown tolerance");
      const double x = number(*it, field);
      if (!(x > 0.0)) fail(field, "must be positive, got " + fmt(x));
      job.tolerances[it.key()] = x;
    }
  }

  if (member(j, "converge")) {
    const json& c = object_at(j, "converge", "converge");
    reject_unknown(c, "converge", {"N"});
    if (const json* v = member(c, "N")) {
      if (!v->is_array() || v->size() < 2) fail("converge.N", "expected an array of at least two mesh sizes");
      job.converge_N.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string field = "converge.N[" + std::to_string(i) + "]";
        const std::size_t n = count((*v)[i], field);
        if (n < 2 || n > 65536) fail(field, "must lie in [2, 65536]");
        if (!job.converge_N.empty() && n <= job.converge_N.back()) fail(field, "mesh sizes must increase");
        job.converge_N.push_back(n);
      }
    }
  }

  if (member(j, "stability")) {
    const json& s = object_at(j, "stability", "stability");
    reject_unknown(s, "stability", {"delta"});
    if (const json* v = member(s, "delta")) job.delta = number(*v, "stability.delta");
    if (!(job.delta > 0.0)) fail("stability.delta", "must be positive, got " + fmt(job.delta));
  }

  if (const json* v = member(j, "exec")) {
    const std::string e = text(*v, "exec");
    if (e == "serial") {
      job.exec = Exec::serial;
    } else if (e != "parallel") {
      fail("exec", "expected serial or parallel");
    }
  }
  return job;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

SoninePair build_pair(const KernelConfig& kc) {
  if (kc.kind == "classical") return make_classical_abel_pair(kc.alpha, kc.b);
  if (kc.kind == "variable") return make_variable_exponent_pair(ExponentFunction::affine(kc.a0, kc.a1, kc.b), kc.b);
  return make_pair(KernelSpec::power(1.0, kc.k_exponent, kc.b), KernelSpec::power(kc.K_coeff, kc.K_exponent, kc.b));
}

double mesh_grading(const JobConfig& job) {
  if (!job.mesh.r_auto) return job.mesh.r;
  const KernelConfig& k = job.kernel;
  if (k.kind == "classical") return default_grading({k.alpha, 1.0 - k.alpha});
  if (k.kind == "variable") {
    const double hi = std::max(k.a0, k.a0 + k.a1 * k.b);
    return default_grading({hi, 1.0 - k.a0});
  }
  return default_grading({k.k_exponent, k.K_exponent});
}

}  // namespace sonine
