#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sonine/exec.hpp"
#include "sonine/kernels.hpp"

namespace sonine {

/// Malformed document or out-of-range field. The message names the field
/// (e.g. "kernel.alpha") or carries line/column for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { verify_pair, compute_g, solve, discover, converge, stability };

Command parse_command(std::string_view name);
const char* to_string(Command c);

struct KernelConfig {
  std::string kind = "classical";  // classical | variable | power
  double alpha = 0.5;              // classical
  double a0 = 0.5, a1 = 0.0;       // variable: alpha(t) = a0 + a1 t
  double b = 1.0;
  // power: k = t^-k_exponent, K = K_coeff t^-K_exponent
  double k_exponent = 0.5;
  double K_exponent = 0.5;
  double K_coeff = 1.0;
};

struct MeshConfig {
  std::size_t N = 512;
  double r = 2.0;
  bool r_auto = false;  // "r": "auto" picks the default grading from the kernel exponents
};

struct OutputConfig {
  std::string path;  // empty: data goes to stdout
  std::string format = "csv";
};

struct JobConfig {
  Command command = Command::verify_pair;
  KernelConfig kernel;
  MeshConfig mesh;
  std::vector<double> rhs{0.0, 1.0};  // f(t) = sum_n c_n t^n
  OutputConfig output;
  std::map<std::string, double> tolerances;
  std::vector<std::size_t> converge_N{128, 256, 512, 1024};
  double delta = 1e-6;
  Exec exec = Exec::parallel;

  double tolerance(const std::string& name) const { return tolerances.at(name); }
};

/// Default tolerance table; keys accepted under "tolerances".
const std::map<std::string, double>& default_tolerances();

JobConfig parse_config(std::string_view text);
JobConfig load_config(const std::string& path);

SoninePair build_pair(const KernelConfig& kc);
/// Grading exponent for the job (explicit r, or the automatic choice).
double mesh_grading(const JobConfig& job);

}  // namespace sonine
