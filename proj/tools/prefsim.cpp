#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "prefsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"prefsim - simulated online preference elicitation"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("config", config_path, "Path to the run configuration (JSON)")->required();

  app.add_subcommand("list-scenarios", "List the builtin experiment catalogue");

  std::string raw_path;
  std::string out_path;
  auto* summarize = app.add_subcommand("summarize", "Recompute summary.csv from a raw.csv");
  summarize->add_option("raw", raw_path, "raw.csv written by `prefsim run`")->required();
  summarize->add_option("out", out_path, "Output summary CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : prefsim::cli::kExitConfigError;
  }

  if (*run) return prefsim::cli::cmd_run(config_path, std::cout, std::cerr);
  if (*summarize) return prefsim::cli::cmd_summarize(raw_path, out_path, std::cerr);
  return prefsim::cli::cmd_list_scenarios(std::cout);
}
