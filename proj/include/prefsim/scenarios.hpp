#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prefsim/elicitation.hpp"

namespace prefsim {

enum class Family { Ideal, Instability, Misspecification, Noise };

std::string to_string(Family family);
Family parse_family(const std::string& name);

/// One grid point. Parameters that do not apply to the family are empty.
struct CellParams {
  std::string scenario;
  int d = 5;
  std::optional<int> t_change;
  std::optional<double> sigma;
  std::optional<int> k;
  std::optional<int> m;
  FeatureKind feature_kind = FeatureKind::IntegerRange;
};

/// Scenario names per family:
///   ideal             "ideal"
///   instability       the nine instability scenario names
///   misspecification  "tree", "interactions", "missing"
///   noise             "response", "preference", "response-tv", "preference-tv"
/// The "-tv" noise scenarios use sigma / sqrt(t).
struct ExperimentSpec {
  std::string name;
  Family family = Family::Ideal;
  std::vector<std::string> scenarios;
  std::vector<int> d_values;
  std::vector<int> t_change_values;
  std::vector<double> sigma_values;
  std::vector<int> k_values;
  std::vector<int> m_values;
  std::vector<FeatureKind> feature_kinds{FeatureKind::IntegerRange};
  std::vector<SamplerKind> samplers{SamplerKind::Random, SamplerKind::VersionSpace, SamplerKind::Bayes};
  int agents_per_cell = 50;
  int comparisons = 50;
  std::size_t pool_size = 1000;
  std::size_t heldout_size = 1000;
  std::uint64_t master_seed = 0;
  SvmOptions svm;
  ArdOptions ard;

  /// Cells in enumeration order: scenario, then d, then the family's
  /// remaining axes in the order t_change/sigma/k/m, then feature kind.
  /// Throws ConfigError on an inconsistent grid.
  std::vector<CellParams> cells() const;
};

/// A fully specified trial plus the labels it is reported under.
struct TrialPlan {
  std::size_t index = 0;
  std::string experiment;
  CellParams cell;
  SamplerKind sampler = SamplerKind::Random;
  int agent_index = 0;
  TrialConfig config;
};

/// Seed for (master_seed, family, cell, agent index); independent of sampler.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, Family family, const CellParams& cell,
                                int agent_index);

AgentSpec agent_spec_for(Family family, const CellParams& cell);

/// Trials ordered by cell, then agent index, then sampler (in spec order), so
/// paired trials are adjacent.
std::vector<TrialPlan> expand(const ExperimentSpec& spec);

/// The named experiments reproducing the published simulation setups.
const std::map<std::string, ExperimentSpec>& builtin_catalogue();

}  // namespace prefsim
