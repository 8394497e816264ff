#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sonine/config.hpp"
#include "sonine/run.hpp"

using namespace sonine;

namespace {

std::string error_of(const std::string& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string csv_of(const JobConfig& job) {
  std::ostringstream os;
  write_csv(os, execute(job).table);
  return os.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal config gets defaults") {
  const JobConfig j = parse_config(R"({"command": "verify-pair", "kernel": {"kind": "classical", "alpha": 0.5, "b": 1}})");
  CHECK(j.command == Command::verify_pair);
  CHECK(j.kernel.alpha == 0.5);
  CHECK(j.mesh.N == 512);
  CHECK(j.mesh.r == 2.0);
  CHECK(j.output.format == "csv");
  CHECK(j.tolerance("sc_residual") == 1e-4);
}

TEST_CASE("range errors name the field") {
  CHECK(error_of(R"({"kernel": {"kind": "classical", "alpha": 1.2}})").find("kernel.alpha") != std::string::npos);
  CHECK(error_of(R"({"kernel": {"kind": "classical"}, "mesh": {"N": 1}})").find("mesh.N") != std::string::npos);
  CHECK(error_of(R"({"kernel": {"kind": "classical"}, "mesh": {"r": 0.5}})").find("mesh.r") != std::string::npos);
  CHECK(error_of(R"({"kernel": {"kind": "variable", "profile": {"a0": 0.5, "a1": 2}, "b": 0.5}})")
            .find("kernel.profile") != std::string::npos);
  CHECK(error_of(R"({"kernel": {"kind": "classical"}, "output": {"format": "xml"}})").find("output.format") !=
        std::string::npos);
  CHECK(error_of(R"({"kernel": {"kind": "classical"}, "tolerances": {"bogus": 1}})").find("tolerances.bogus") !=
        std::string::npos);
  CHECK(error_of(R"({"kernel": {"kind": "classical", "alpah": 0.5}})").find("kernel.alpah") != std::string::npos);
  CHECK(error_of(R"({"command": "fly", "kernel": {}})").find("command") != std::string::npos);
  CHECK(error_of(R"({"mesh": {}})").find("kernel") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
  const std::string msg = error_of("{\n  \"kernel\": {\n    \"alpha\": 0.5,,\n  }\n}");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("affine profile accepted") {
  const JobConfig j =
      parse_config(R"({"command": "compute-g", "kernel": {"kind": "variable", "profile": {"a0": 0.5, "a1": 0.2}, "b": 0.5}})");
  CHECK(j.kernel.a0 + j.kernel.a1 * j.kernel.b == doctest::Approx(0.6));
  const SoninePair p = build_pair(j.kernel);
  CHECK(p.exponent.has_value());
}

TEST_CASE("automatic grading") {
  const JobConfig j = parse_config(R"({"kernel": {"kind": "classical", "alpha": 0.25}, "mesh": {"r": "auto"}})");
  CHECK(j.mesh.r_auto);
  CHECK(mesh_grading(j) == 4.0);
  const JobConfig v =
      parse_config(R"({"kernel": {"kind": "power", "k_exponent": 0.2, "K_exponent": 0.3}, "mesh": {"r": "auto"}})");
  CHECK(mesh_grading(v) == doctest::Approx(2.0 / 0.7));
}

TEST_CASE("verify-pair output") {
  const JobConfig j = parse_config(R"({"command": "verify-pair", "kernel": {"kind": "classical", "alpha": 0.5, "b": 1}})");
  const RunResult r = execute(j);
  CHECK(r.pass);
  CHECK(r.exit_code() == 0);
  CHECK(r.summary.rfind("verify-pair: sc_residual=", 0) == 0);
  const std::string csv = csv_of(j);
  CHECK(csv.rfind("t,g\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv == csv_of(j));
}

TEST_CASE("mismatched pair is a tolerance failure") {
  const JobConfig j = parse_config(
      R"({"command": "verify-pair", "kernel": {"kind": "power", "k_exponent": 0.5, "K_exponent": 0.5, "K_coeff": 1}})");
  CHECK(execute(j).exit_code() == 2);
  JobConfig s = j;
  s.command = Command::solve;
  CHECK(execute(s).exit_code() == 2);
}

TEST_CASE("converge output") {
  const JobConfig j = parse_config(R"({"command": "converge", "kernel": {"kind": "classical", "alpha": 0.5, "b": 1},
                                       "mesh": {"r": 3}, "rhs": {"coefficients": [0, 1]},
                                       "converge": {"N": [128, 256, 512, 1024]}})");
  const RunResult r = execute(j);
  CHECK(r.pass);
  CHECK(r.table.columns == std::vector<std::string>{"N", "h", "max_err", "order"});
  CHECK(r.table.rows.size() == 4);
}

TEST_CASE("discover and stability outputs") {
  JobConfig j = parse_config(
      R"({"command": "discover", "kernel": {"kind": "variable", "profile": {"a0": 0.5, "a1": 0.2}, "b": 0.5}, "mesh": {"N": 256}})");
  RunResult r = execute(j);
  CHECK(r.pass);
  CHECK(r.table.columns == std::vector<std::string>{"t", "u", "associate_residual"});
  j.command = Command::stability;
  r = execute(j);
  CHECK(r.pass);
  CHECK(r.table.columns == std::vector<std::string>{"t", "du", "dF"});
  j.command = Command::solve;
  r = execute(j);
  CHECK(r.table.columns == std::vector<std::string>{"t", "u", "F", "residual"});
  j.command = Command::compute_g;
  r = execute(j);
  CHECK(r.pass);
  CHECK(r.table.columns == std::vector<std::string>{"t", "g", "g_substituted", "gprime"});
}

TEST_CASE("json output is a flat object") {
  const JobConfig j = parse_config(R"({"command": "solve", "kernel": {"kind": "classical", "alpha": 0.5}, "mesh": {"N": 64}})");
  std::ostringstream os;
  write_json(os, j, execute(j));
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc.is_object());
  CHECK(doc.at("command") == "solve");
  CHECK(doc.contains("residual_first_kind"));
  CHECK(doc.at("u").is_array());
  for (const auto& [k, v] : doc.items()) CHECK_FALSE(v.is_object());
}

TEST_CASE("csv prints 17 significant digits") {
  Table t{{"x"}, {{0.1}, {1.0 / 3.0}}};
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "x\n0.10000000000000001\n0.33333333333333331\n");
}

}  // TEST_SUITE
