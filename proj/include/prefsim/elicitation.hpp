#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefsim/agents.hpp"
#include "prefsim/bayes.hpp"
#include "prefsim/core.hpp"
#include "prefsim/eval.hpp"
#include "prefsim/samplers.hpp"
#include "prefsim/svm.hpp"

namespace prefsim {

enum class UtilityKind { Linear, Tree, Interaction, HiddenFeature };

/// Everything needed to construct an agent, short of randomness.
struct AgentSpec {
  UtilityKind utility = UtilityKind::Linear;
  std::optional<InstabilityScenario> instability;
  int t_change = 1;
  int interactions = 0;  // k, interaction utilities only
  int missing = 0;       // m, hidden-feature utilities only
  NoiseSpec noise;
};

/// Random stream labels. Each purpose draws from its own stream so the agent,
/// the held-out set and agent noise never depend on the sampler in use.
namespace streams {
inline constexpr const char* kAgent = "agent";
inline constexpr const char* kNoise = "noise";
inline constexpr const char* kHeldout = "heldout";
inline constexpr const char* kPool = "pool";
inline constexpr const char* kSampler = "sampler";
}  // namespace streams

AgentModel build_agent(const AgentSpec& spec, const FeatureSpace& space, std::uint64_t seed);

struct TrialConfig {
  FeatureSpace space;
  int comparisons = 50;  // N
  AgentSpec agent;
  SamplerConfig sampler;
  std::size_t heldout_size = 1000;
  std::uint64_t seed = 0;
  SvmOptions svm;
  ArdOptions ard;

  void validate() const;
};

struct StepRecord {
  int timestep = 1;
  Comparison comparison;
  int response = 0;
  Vector w_hat;
  double accuracy = 0.0;
  std::optional<double> distance;  // linear-reference agents only
};

struct TrialTrace {
  std::vector<StepRecord> steps;
  Hypothesis final_hypothesis;
  /// The agent's weights at t = 1 (w_pre under instability), for pairing checks.
  std::optional<Vector> agent_weights;
};

/// A trial failed part-way; `timestep` is the step that raised.
class TrialAborted : public std::runtime_error {
 public:
  TrialAborted(int timestep, const std::string& what)
      : std::runtime_error("trial aborted at timestep " + std::to_string(timestep) + ": " + what),
        timestep_(timestep) {}
  int timestep() const { return timestep_; }

 private:
  int timestep_;
};

/// The online elicitation loop. For t = 1..N: draw a fresh candidate pool,
/// select a query, record the agent's response, refit the SVM from scratch
/// on the full history and score it on the held-out set.
TrialTrace run_trial(const TrialConfig& cfg);

}  // namespace prefsim
