#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "prefsim/scenarios.hpp"

namespace prefsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

inline constexpr const char* kWorkersEnv = "PREFSIM_WORKERS";

/// A run configuration file, fully resolved against defaults and the builtin
/// catalogue. See README.md for the schema.
struct RunConfig {
  ExperimentSpec spec;
  std::string output_dir_text = "results";  // as written in the file
  std::filesystem::path output_dir;         // resolved against the config file's directory
  std::optional<int> workers;               // as written in the file
};

/// Throws ConfigError on unreadable files, bad JSON, unknown keys, wrong
/// types and inconsistent grids.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// The effective configuration echoed to config.resolved.json. Worker count
/// is deliberately absent: it never changes any output.
nlohmann::json resolved_json(const RunConfig& cfg);
nlohmann::json spec_json(const ExperimentSpec& spec);

/// PREFSIM_WORKERS, then the config value, then the CPU count.
/// Throws ConfigError when the environment value is not a positive integer.
int resolve_workers(std::optional<int> configured);

/// `prefsim run <config.json>`: writes raw.csv, summary.csv and
/// config.resolved.json (plus aborted.csv when any trial aborted).
int cmd_run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
/// `prefsim list-scenarios`
int cmd_list_scenarios(std::ostream& out);
/// `prefsim summarize <raw.csv> <out.csv>`
int cmd_summarize(const std::filesystem::path& raw_csv, const std::filesystem::path& out_csv,
                  std::ostream& err);

}  // namespace prefsim::cli
