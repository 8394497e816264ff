// sonine-kit <command> --config <path> [--out <path>] [--format csv|json]
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sonine/config.hpp"
#include "sonine/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sonine kernel pairs and first-kind Volterra solves"};
  std::string command, config_path, out_path, format;
  app.add_option("command", command, "verify-pair | compute-g | solve | discover | converge | stability")->required();
  app.add_option("--config", config_path, "JSON job description")->required();
  app.add_option("--out", out_path, "output file (overrides output.path)");
  app.add_option("--format", format, "csv or json (overrides output.format)")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    sonine::JobConfig job = sonine::load_config(config_path);
    job.command = sonine::parse_command(command);
    if (!out_path.empty()) job.output.path = out_path;
    if (!format.empty()) job.output.format = format;
    return sonine::run(job, job.output.path.empty() ? std::cerr : std::cout);
  } catch (const std::exception& e) {
    std::cerr << "sonine-kit: " << e.what() << '\n';
    return 1;
  }
}
