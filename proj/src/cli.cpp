#include "prefsim/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "prefsim/parallel.hpp"
#include "prefsim/results.hpp"

namespace prefsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + key + "' in " + where + " has the wrong type");
  }
}

template <typename T>
std::vector<T> get_list(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError("key '" + key + "' in " + where + " must be an array");
  return get_as<std::vector<T>>(obj, key, where);
}

std::vector<SamplerKind> parse_samplers(const json& obj, const std::string& where) {
  std::vector<SamplerKind> out;
  for (const auto& name : get_list<std::string>(obj, "samplers", where)) out.push_back(parse_sampler_kind(name));
  return out;
}

std::vector<FeatureKind> parse_feature_kinds(const json& obj, const std::string& where) {
  std::vector<FeatureKind> out;
  for (const auto& name : get_list<std::string>(obj, "feature_kind", where))
    out.push_back(parse_feature_kind(name));
  return out;
}

/// Grid axes shared by inline experiments and overrides.
void apply_grid(ExperimentSpec& spec, const json& obj, const std::string& where) {
  if (obj.contains("scenarios")) spec.scenarios = get_list<std::string>(obj, "scenarios", where);
  if (obj.contains("d")) spec.d_values = get_list<int>(obj, "d", where);
  if (obj.contains("t_change")) spec.t_change_values = get_list<int>(obj, "t_change", where);
  if (obj.contains("sigma")) spec.sigma_values = get_list<double>(obj, "sigma", where);
  if (obj.contains("k")) spec.k_values = get_list<int>(obj, "k", where);
  if (obj.contains("m")) spec.m_values = get_list<int>(obj, "m", where);
  if (obj.contains("feature_kind")) spec.feature_kinds = parse_feature_kinds(obj, where);
  if (obj.contains("samplers")) spec.samplers = parse_samplers(obj, where);
}

ExperimentSpec parse_inline_experiment(const json& obj) {
  const std::string where = "experiment";
  check_keys(obj, {"name", "family", "scenarios", "d", "t_change", "sigma", "k", "m", "feature_kind", "samplers"},
             where);
  if (!obj.contains("name") || !obj.contains("family"))
    throw ConfigError("inline experiment needs 'name' and 'family'");
  ExperimentSpec spec;
  spec.name = get_as<std::string>(obj, "name", where);
  if (spec.name.empty() || spec.name.find_first_of(",\"\n\r") != std::string::npos)
    throw ConfigError("experiment name must be non-empty and contain no commas, quotes or newlines");
  spec.family = parse_family(get_as<std::string>(obj, "family", where));
  if (spec.family == Family::Ideal) spec.scenarios = {"ideal"};
  apply_grid(spec, obj, where);
  return spec;
}

void apply_overrides(ExperimentSpec& spec, const json& obj) {
  const std::string where = "overrides";
  check_keys(obj,
             {"scenarios", "d", "t_change", "sigma", "k", "m", "feature_kind", "samplers", "heldout_size",
              "svm_cost", "svm_tolerance", "svm_max_passes", "ard_tolerance", "ard_max_iterations",
              "ard_alpha_min", "ard_alpha_max", "ard_prior_shape", "ard_prior_rate", "ard_predictive_noise"},
             where);
  apply_grid(spec, obj, where);
  if (obj.contains("heldout_size")) spec.heldout_size = get_as<std::size_t>(obj, "heldout_size", where);
  if (obj.contains("svm_cost")) spec.svm.cost = get_as<double>(obj, "svm_cost", where);
  if (obj.contains("svm_tolerance")) spec.svm.tolerance = get_as<double>(obj, "svm_tolerance", where);
  if (obj.contains("svm_max_passes")) spec.svm.max_passes = get_as<int>(obj, "svm_max_passes", where);
  if (obj.contains("ard_tolerance")) spec.ard.tolerance = get_as<double>(obj, "ard_tolerance", where);
  if (obj.contains("ard_max_iterations"))
    spec.ard.max_iterations = get_as<int>(obj, "ard_max_iterations", where);
  if (obj.contains("ard_alpha_min")) spec.ard.alpha_min = get_as<double>(obj, "ard_alpha_min", where);
  if (obj.contains("ard_alpha_max")) spec.ard.alpha_max = get_as<double>(obj, "ard_alpha_max", where);
  if (obj.contains("ard_prior_shape")) spec.ard.prior_shape = get_as<double>(obj, "ard_prior_shape", where);
  if (obj.contains("ard_prior_rate")) spec.ard.prior_rate = get_as<double>(obj, "ard_prior_rate", where);
  if (obj.contains("ard_predictive_noise"))
    spec.ard.predictive_includes_noise = get_as<bool>(obj, "ard_predictive_noise", where);

  if (!(spec.svm.cost > 0.0)) throw ConfigError("svm_cost must be > 0");
  if (!(spec.svm.tolerance > 0.0)) throw ConfigError("svm_tolerance must be > 0");
  if (spec.svm.max_passes < 1) throw ConfigError("svm_max_passes must be >= 1");
  if (!(spec.ard.tolerance > 0.0)) throw ConfigError("ard_tolerance must be > 0");
  if (spec.ard.max_iterations < 1) throw ConfigError("ard_max_iterations must be >= 1");
  if (!(spec.ard.alpha_min > 0.0) || !(spec.ard.alpha_max > spec.ard.alpha_min))
    throw ConfigError("need 0 < ard_alpha_min < ard_alpha_max");
  if (!(spec.ard.prior_shape > 0.0) || !(spec.ard.prior_rate > 0.0))
    throw ConfigError("ard prior shape and rate must be > 0");
}

template <typename T, typename F>
json map_list(const std::vector<T>& xs, F f) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

std::string join(const json& list) {
  std::string out;
  for (const auto& v : list) {
    if (!out.empty()) out += ", ";
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const json& doc, const fs::path& base_dir) {
  const std::string where = "config";
  check_keys(doc, {"experiment", "master_seed", "agents_per_cell", "N", "pool_size", "output_dir", "workers",
                   "overrides"},
             where);
  if (!doc.contains("experiment")) throw ConfigError("config needs an 'experiment' (builtin name or inline spec)");

  RunConfig cfg;
  const json& exp = doc.at("experiment");
  if (exp.is_string()) {
    const auto name = exp.get<std::string>();
    const auto& catalogue = builtin_catalogue();
    auto it = catalogue.find(name);
    if (it == catalogue.end()) throw ConfigError("unknown builtin experiment '" + name + "'");
    cfg.spec = it->second;
  } else {
    cfg.spec = parse_inline_experiment(exp);
  }

  if (doc.contains("master_seed")) cfg.spec.master_seed = get_as<std::uint64_t>(doc, "master_seed", where);
  if (doc.contains("agents_per_cell")) cfg.spec.agents_per_cell = get_as<int>(doc, "agents_per_cell", where);
  if (doc.contains("N")) cfg.spec.comparisons = get_as<int>(doc, "N", where);
  if (doc.contains("pool_size")) cfg.spec.pool_size = get_as<std::size_t>(doc, "pool_size", where);
  if (doc.contains("output_dir")) cfg.output_dir_text = get_as<std::string>(doc, "output_dir", where);
  if (doc.contains("workers")) {
    cfg.workers = get_as<int>(doc, "workers", where);
    if (*cfg.workers < 1) throw ConfigError("workers must be >= 1");
  }
  if (doc.contains("overrides")) apply_overrides(cfg.spec, doc.at("overrides"));

  fs::path out(cfg.output_dir_text);
  cfg.output_dir = out.is_absolute() ? out : base_dir / out;
  cfg.spec.cells();  // validates the grid
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_run_config(doc, fs::absolute(path).parent_path());
}

json spec_json(const ExperimentSpec& spec) {
  json e;
  e["name"] = spec.name;
  e["family"] = to_string(spec.family);
  e["scenarios"] = spec.scenarios;
  e["d"] = spec.d_values;
  e["t_change"] = spec.t_change_values;
  e["sigma"] = spec.sigma_values;
  e["k"] = spec.k_values;
  e["m"] = spec.m_values;
  e["feature_kind"] = map_list(spec.feature_kinds, [](FeatureKind k) { return to_string(k); });
  e["samplers"] = map_list(spec.samplers, [](SamplerKind k) { return to_string(k); });
  return e;
}

json resolved_json(const RunConfig& cfg) {
  const auto& s = cfg.spec;
  json j;
  j["experiment"] = spec_json(s);
  j["master_seed"] = s.master_seed;
  j["agents_per_cell"] = s.agents_per_cell;
  j["N"] = s.comparisons;
  j["pool_size"] = s.pool_size;
  j["output_dir"] = cfg.output_dir_text;
  json o;
  o["heldout_size"] = s.heldout_size;
  o["svm_cost"] = s.svm.cost;
  o["svm_tolerance"] = s.svm.tolerance;
  o["svm_max_passes"] = s.svm.max_passes;
  o["ard_tolerance"] = s.ard.tolerance;
  o["ard_max_iterations"] = s.ard.max_iterations;
  o["ard_alpha_min"] = s.ard.alpha_min;
  o["ard_alpha_max"] = s.ard.alpha_max;
  o["ard_prior_shape"] = s.ard.prior_shape;
  o["ard_prior_rate"] = s.ard.prior_rate;
  o["ard_predictive_noise"] = s.ard.predictive_includes_noise;
  j["overrides"] = o;
  j["cells"] = s.cells().size();
  j["trials"] = s.cells().size() * static_cast<std::size_t>(s.agents_per_cell) * s.samplers.size();
  return j;
}

int resolve_workers(std::optional<int> configured) {
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096)
      throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer, got '" + env + "'");
    return static_cast<int>(v);
  }
  if (configured) return *configured;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int cmd_run(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::vector<TrialPlan> plans;
  int workers = 1;
  try {
    cfg = load_run_config(config_path);
    plans = expand(cfg.spec);
    workers = resolve_workers(cfg.workers);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  const fs::path raw_path = cfg.output_dir / "raw.csv";
  const fs::path summary_path = cfg.output_dir / "summary.csv";
  const fs::path resolved_path = cfg.output_dir / "config.resolved.json";
  const fs::path aborted_path = cfg.output_dir / "aborted.csv";
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : {raw_path, summary_path, resolved_path, aborted_path}) fs::remove(p, ec);
  };

  try {
    fs::create_directories(cfg.output_dir);
    cleanup();
    {
      std::ofstream f(resolved_path);
      f << resolved_json(cfg).dump(2) << '\n';
      if (!f) throw std::runtime_error("cannot write " + resolved_path.string());
    }

    out << "running " << plans.size() << " trials of '" << cfg.spec.name << "' on " << workers
        << " worker(s)\n";
    const auto started = std::chrono::steady_clock::now();
    std::vector<std::vector<RawRow>> rows(plans.size());
    std::vector<std::string> aborts(plans.size());
    parallel_for(plans.size(), workers, [&](std::size_t i) {
      try {
        rows[i] = raw_rows(plans[i], run_trial(plans[i].config));
      } catch (const TrialAborted& e) {
        std::string msg = "\"";
        for (const char ch : std::string(e.what())) {
          if (ch == '"') msg += '"';
          msg += ch == '\n' ? ' ' : ch;
        }
        aborts[i] = std::to_string(e.timestep()) + "," + msg + "\"";
      }
    });

    std::vector<RawRow> all;
    std::size_t aborted = 0;
    for (std::size_t i = 0; i < plans.size(); ++i) {
      all.insert(all.end(), rows[i].begin(), rows[i].end());
      if (!aborts[i].empty()) ++aborted;
    }
    {
      std::ofstream f(raw_path);
      write_raw_csv(f, all);
      if (!f) throw std::runtime_error("cannot write " + raw_path.string());
    }
    {
      std::ofstream f(summary_path);
      const auto summary = summarize_rows(all);
      write_summary_csv(f, summary);
      if (!f) throw std::runtime_error("cannot write " + summary_path.string());
    }
    if (aborted > 0) {
      std::ofstream f(aborted_path);
      f << "trial,experiment,scenario,sampler,agent_index,seed,timestep,message\n";
      for (std::size_t i = 0; i < plans.size(); ++i) {
        if (aborts[i].empty()) continue;
        const auto& p = plans[i];
        f << i << ',' << p.experiment << ',' << p.cell.scenario << ',' << to_string(p.sampler) << ','
          << p.agent_index << ',' << p.config.seed << ',' << aborts[i] << '\n';
      }
      err << "warning: " << aborted << " trial(s) aborted; see " << aborted_path.string() << '\n';
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    out << "wrote " << all.size() << " rows to " << raw_path.string() << " in " << secs << " s\n";
  } catch (const std::exception& e) {
    cleanup();
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

int cmd_list_scenarios(std::ostream& out) {
  for (const auto& [name, spec] : builtin_catalogue()) {
    const json j = spec_json(spec);
    const auto cells = spec.cells().size();
    out << name << " (family: " << j["family"].get<std::string>() << ")\n";
    out << "  scenarios: " << join(j["scenarios"]) << '\n';
    out << "  d: " << join(j["d"]) << '\n';
    for (const char* axis : {"t_change", "sigma", "k", "m"}) {
      if (!j[axis].empty()) out << "  " << axis << ": " << join(j[axis]) << '\n';
    }
    out << "  feature_kind: " << join(j["feature_kind"]) << '\n';
    out << "  samplers: " << join(j["samplers"]) << '\n';
    out << "  cells: " << cells << ", agents per cell: " << spec.agents_per_cell << ", N: " << spec.comparisons
        << '\n';
  }
  return kExitOk;
}

int cmd_summarize(const fs::path& raw_csv, const fs::path& out_csv, std::ostream& err) {
  std::vector<RawRow> rows;
  try {
    std::ifstream in(raw_csv);
    if (!in) throw CsvError("cannot read " + raw_csv.string());
    rows = read_raw_csv(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  try {
    std::ofstream f(out_csv);
    write_summary_csv(f, summarize_rows(rows));
    if (!f) throw std::runtime_error("cannot write " + out_csv.string());
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::remove(out_csv, ec);
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace prefsim::cli
