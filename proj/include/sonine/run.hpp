#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sonine/config.hpp"

namespace sonine {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  bool pass = false;
  std::string summary;  // one line, headline residual first
  Table table;
  std::map<std::string, double> scalars;

  int exit_code() const { return pass ? 0 : 2; }
};

/// Runs the job's pipeline without touching the file system.
RunResult execute(const JobConfig& job);

/// Header row, %.17g floats, LF line endings.
void write_csv(std::ostream& out, const Table& table);
/// Flat object: scalars, pass flag, and one array per table column.
void write_json(std::ostream& out, const JobConfig& job, const RunResult& result);

/// execute + emit. Data goes to job.output.path (stdout when empty); the
/// summary goes to `summary`. Returns the exit code (0 pass, 2 tolerance fail).
int run(const JobConfig& job, std::ostream& summary);

}  // namespace sonine
