#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prefsim/core.hpp"

namespace prefsim {

/// u(x) = w'x
struct LinearUtility {
  Vector w;
};

/// Complete binary tree stored in heap order: internal node i has children
/// 2i+1 (taken when x[feature] <= threshold) and 2i+2.
struct TreeUtility {
  int d = 2;
  int depth = 1;
  std::vector<int> features;       // 2^depth - 1 entries
  std::vector<double> thresholds;  // 2^depth - 1 entries
  Vector leaves;                   // 2^depth entries

  int internal_count() const { return (1 << depth) - 1; }
  int leaf_index(const Vector& x) const;
};

/// u(x) = w'x + sum_k pair_weights[k] * x[i_k] * x[j_k]
struct InteractionUtility {
  Vector w;
  std::vector<std::pair<int, int>> pairs;  // i < j, lexicographically sorted
  Vector pair_weights;
};

/// The agent sees `hidden` extra features the learner never observes. Their
/// values are a pure function of (key, visible case), so a case presented
/// twice within a trial carries the same hidden values.
struct HiddenFeatureUtility {
  Vector w_full;  // visible weights first, then hidden
  int visible = 1;
  int hidden = 1;
  FeatureSpace space;
  std::uint64_t key = 0;

  Vector hidden_values(const Vector& x) const;
};

using UtilityModel =
    std::variant<LinearUtility, TreeUtility, InteractionUtility, HiddenFeatureUtility>;

enum class InstabilityScenario {
  DownscaleOrdered,
  DownscaleRandom,
  DownscaleOrdered2,
  DownscaleOrdered4,
  UpscaleOrdered,
  UpscaleRandom,
  UpscaleOrdered2,
  UpscaleOrdered4,
  RandomSwitch,
};

std::string to_string(InstabilityScenario s);
/// Throws ConfigError on an unknown name.
InstabilityScenario parse_instability_scenario(const std::string& name);
const std::vector<InstabilityScenario>& all_instability_scenarios();
/// Number of features the scenario keeps on its sparse side (0 for random-switch).
int scenario_feature_count(InstabilityScenario s);

/// w_pre is active for t < t_change, w_post for t >= t_change.
struct InstabilitySchedule {
  int t_change = 1;
  Vector w_pre;
  Vector w_post;
  InstabilityScenario scenario = InstabilityScenario::RandomSwitch;

  const Vector& active(int t) const { return t < t_change ? w_pre : w_post; }
};

enum class NoiseKind { None, Response, Preference };

std::string to_string(NoiseKind kind);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double sigma = 0.0;
  bool time_variant = false;

  /// sigma / sqrt(t) when time-variant, sigma otherwise.
  double effective_sigma(int t) const;
  bool active() const { return kind != NoiseKind::None && sigma > 0.0; }
};

/// A synthetic respondent.
///
/// utility_of and reference_response are the noiseless, deterministic view of
/// the agent used for evaluation. respond is the agent answering a live query;
/// it consumes the agent's own noise stream.
class AgentModel {
 public:
  AgentModel(UtilityModel utility, NoiseSpec noise, RandomSource noise_rng,
             std::optional<InstabilitySchedule> instability = std::nullopt);

  const UtilityModel& utility() const { return utility_; }
  const NoiseSpec& noise() const { return noise_; }
  const std::optional<InstabilitySchedule>& instability() const { return instability_; }

  double utility_of(const Case& x, int t) const;
  int respond(const Comparison& c, int t);
  /// Noiseless strict-indicator response at timestep t.
  int reference_response(const Comparison& c, int t) const;

  /// Weights a learned hypothesis is compared against at timestep t; empty
  /// for agents whose utility is not linear in the visible features.
  std::optional<Vector> reference_weights(int t) const;
  /// w* for linear agents (w_pre under instability); empty otherwise.
  std::optional<Vector> summary_weights() const;
  int dimension() const;

 private:
  UtilityModel utility_;
  NoiseSpec noise_;
  RandomSource noise_rng_;
  std::optional<InstabilitySchedule> instability_;
};

Vector sample_uniform_weights(int d, RandomSource& rng);

/// Throws PreconditionError when d is too small for the scenario.
InstabilitySchedule make_instability(InstabilityScenario scenario, int d, int t_change,
                                     RandomSource& rng);
/// Builds the sparse side of an ordered scenario: keeps the k largest-|w|
/// components (ties to the lower index) and zeroes the rest.
Vector keep_top_k(const Vector& w, int k);

/// Depth floor(log2 d); requires d >= 2.
TreeUtility make_tree_utility(int d, const FeatureSpace& space, RandomSource& rng);
/// Requires 0 <= k <= d(d-1)/2.
InteractionUtility make_interaction_utility(int d, int k, RandomSource& rng);
/// Requires d >= 1 and m >= 1.
HiddenFeatureUtility make_hidden_feature_utility(int d, int m, const FeatureSpace& space,
                                                 RandomSource& rng);

int tree_depth_for(int d);

}  // namespace prefsim
