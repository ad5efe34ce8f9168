#include "prefsim/elicitation.hpp"

namespace prefsim {

AgentModel build_agent(const AgentSpec& spec, const FeatureSpace& space, std::uint64_t seed) {
  RandomSource rng(seed, streams::kAgent);
  RandomSource noise_rng(seed, streams::kNoise);
  const int d = space.d;

  switch (spec.utility) {
    case UtilityKind::Linear: {
      if (spec.instability) {
        auto schedule = make_instability(*spec.instability, d, spec.t_change, rng);
        LinearUtility u{schedule.w_pre};
        return AgentModel(std::move(u), spec.noise, std::move(noise_rng), std::move(schedule));
      }
      return AgentModel(LinearUtility{sample_uniform_weights(d, rng)}, spec.noise,
                        std::move(noise_rng));
    }
    case UtilityKind::Tree:
      return AgentModel(make_tree_utility(d, space, rng), spec.noise, std::move(noise_rng));
    case UtilityKind::Interaction:
      return AgentModel(make_interaction_utility(d, spec.interactions, rng), spec.noise,
                        std::move(noise_rng));
    case UtilityKind::HiddenFeature:
      return AgentModel(make_hidden_feature_utility(d, spec.missing, space, rng), spec.noise,
                        std::move(noise_rng));
  }
  throw PreconditionError("unknown utility kind");
}

void TrialConfig::validate() const {
  space.validate();
  if (comparisons < 1) throw PreconditionError("trial needs N >= 1 comparisons");
  if (sampler.pool_size < 1) throw PreconditionError("pool_size must be >= 1");
  if (heldout_size < 1) throw PreconditionError("heldout_size must be >= 1");
}

TrialTrace run_trial(const TrialConfig& cfg) {
  cfg.validate();
  AgentModel agent = build_agent(cfg.agent, cfg.space, cfg.seed);
  RandomSource heldout_rng(cfg.seed, streams::kHeldout);
  const HeldoutSet heldout = make_heldout_set(cfg.space, cfg.heldout_size, heldout_rng);
  RandomSource pool_rng(cfg.seed, streams::kPool);
  RandomSource sampler_rng(cfg.seed, streams::kSampler);

  TrialTrace trace;
  trace.agent_weights = agent.reference_weights(1);
  trace.steps.reserve(static_cast<std::size_t>(cfg.comparisons));
  std::vector<LabeledComparison> history;
  history.reserve(static_cast<std::size_t>(cfg.comparisons));

  for (int t = 1; t <= cfg.comparisons; ++t) {
    try {
      const auto pool = sample_candidate_pool(cfg.space, cfg.sampler.pool_size, pool_rng);
      const std::size_t pick = select(cfg.sampler.kind, pool, history, sampler_rng, cfg.svm, cfg.ard);
      const Comparison& query = pool[pick];
      const int response = agent.respond(query, t);
      history.push_back(LabeledComparison{query, response, t});

      Hypothesis h = fit_svm(history, cfg.svm);
      StepRecord rec;
      rec.timestep = t;
      rec.comparison = query;
      rec.response = response;
      rec.accuracy = accuracy(h, agent, heldout, t);
      if (auto ref = agent.reference_weights(t)) rec.distance = normalized_distance(h.w_hat, *ref);
      rec.w_hat = h.w_hat;
      trace.steps.push_back(std::move(rec));
      trace.final_hypothesis = std::move(h);
    } catch (const TrialAborted&) {
      throw;
    } catch (const std::exception& e) {
      throw TrialAborted(t, e.what());
    }
  }
  return trace;
}

}  // namespace prefsim
