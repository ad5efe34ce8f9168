#include <gtest/gtest.h>

#include "prefsim/elicitation.hpp"

namespace {

using namespace prefsim;

TrialConfig small_config(SamplerKind sampler, int d, int n, std::uint64_t seed) {
  TrialConfig cfg;
  cfg.space = FeatureSpace::integer_range(d);
  cfg.comparisons = n;
  cfg.sampler = SamplerConfig{sampler, 200};
  cfg.heldout_size = 300;
  cfg.seed = seed;
  return cfg;
}

TEST(RunTrial, SingleStep) {
  const auto trace = run_trial(small_config(SamplerKind::Random, 3, 1, 1));
  ASSERT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(trace.steps[0].timestep, 1);
  const std::vector<LabeledComparison> one{{trace.steps[0].comparison, trace.steps[0].response, 1}};
  EXPECT_EQ(trace.final_hypothesis.w_hat, fit_svm(one).w_hat);
}

TEST(RunTrial, OneFeatureIsLearnedImmediately) {
  for (auto sampler : all_sampler_kinds()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto cfg = small_config(sampler, 1, 8, seed);
      const auto trace = run_trial(cfg);
      for (const auto& s : trace.steps) ASSERT_EQ(s.accuracy, 1.0);
      // every ordered pair of distinct values in 1..10
      const auto agent = build_agent(cfg.agent, cfg.space, cfg.seed);
      for (int a = 1; a <= 10; ++a)
        for (int b = 1; b <= 10; ++b) {
          if (a == b) continue;
          const Comparison c{Case{Vector::Constant(1, a)}, Case{Vector::Constant(1, b)}};
          ASSERT_EQ(predict(trace.final_hypothesis, c), agent.reference_response(c, 8));
        }
    }
  }
}

TEST(RunTrial, Deterministic) {
  for (auto sampler : all_sampler_kinds()) {
    const auto cfg = small_config(sampler, 4, 12, 77);
    const auto a = run_trial(cfg), b = run_trial(cfg);
    ASSERT_EQ(a.steps.size(), b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
      EXPECT_EQ(a.steps[i].comparison.left, b.steps[i].comparison.left);
      EXPECT_EQ(a.steps[i].comparison.right, b.steps[i].comparison.right);
      EXPECT_EQ(a.steps[i].response, b.steps[i].response);
      EXPECT_EQ(a.steps[i].w_hat, b.steps[i].w_hat);
      EXPECT_EQ(a.steps[i].accuracy, b.steps[i].accuracy);
      EXPECT_EQ(a.steps[i].distance, b.steps[i].distance);
    }
  }
}

TEST(RunTrial, TraceShape) {
  auto cfg = small_config(SamplerKind::Bayes, 5, 15, 3);
  const auto trace = run_trial(cfg);
  ASSERT_EQ(trace.steps.size(), 15u);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    EXPECT_EQ(s.timestep, static_cast<int>(i) + 1);
    EXPECT_GE(s.accuracy, 0.0);
    EXPECT_LE(s.accuracy, 1.0);
    ASSERT_TRUE(s.distance.has_value());
    EXPECT_GE(*s.distance, 0.0);
    EXPECT_LE(*s.distance, 2.0);
    EXPECT_TRUE(s.w_hat.allFinite());
  }
  cfg.agent.utility = UtilityKind::Tree;
  for (const auto& s : run_trial(cfg).steps) EXPECT_FALSE(s.distance.has_value());
}

TEST(RunTrial, PairedAcrossSamplers) {
  for (std::uint64_t seed : {5u, 6u}) {
    auto cfg = small_config(SamplerKind::Random, 4, 3, seed);
    cfg.agent.instability = InstabilityScenario::UpscaleOrdered2;
    cfg.agent.t_change = 2;
    const auto r = run_trial(cfg);
    cfg.sampler.kind = SamplerKind::VersionSpace;
    const auto v = run_trial(cfg);
    cfg.sampler.kind = SamplerKind::Bayes;
    const auto b = run_trial(cfg);
    EXPECT_EQ(*r.agent_weights, *v.agent_weights);
    EXPECT_EQ(*r.agent_weights, *b.agent_weights);
    // Step 1 is a cold start for every sampler: same pool, same random pick.
    EXPECT_EQ(r.steps[0].comparison.left, v.steps[0].comparison.left);
    EXPECT_EQ(r.steps[0].comparison.left, b.steps[0].comparison.left);
    EXPECT_EQ(r.steps[0].accuracy, b.steps[0].accuracy);
  }
}

TEST(RunTrial, HeldoutIndependentOfSampler) {
  const auto cfg = small_config(SamplerKind::Random, 3, 1, 9);
  RandomSource a(cfg.seed, streams::kHeldout), b(cfg.seed, streams::kHeldout);
  const auto h1 = make_heldout_set(cfg.space, cfg.heldout_size, a);
  const auto h2 = make_heldout_set(cfg.space, cfg.heldout_size, b);
  EXPECT_EQ(h1.diffs, h2.diffs);
  // The recorded accuracy is reproducible from the held-out stream alone.
  const auto trace = run_trial(cfg);
  const auto agent = build_agent(cfg.agent, cfg.space, cfg.seed);
  EXPECT_EQ(trace.steps[0].accuracy, accuracy(trace.final_hypothesis, agent, h1, 1));
}

TEST(RunTrial, RandomSamplerImprovesOnAverage) {
  constexpr int kSeeds = 100;
  std::array<double, 4> mean{};
  const std::array<int, 4> at{1, 5, 15, 40};
  for (int s = 0; s < kSeeds; ++s) {
    const auto trace = run_trial(small_config(SamplerKind::Random, 4, 40, 1000 + s));
    for (std::size_t k = 0; k < at.size(); ++k) mean[k] += trace.steps[at[k] - 1].accuracy / kSeeds;
  }
  for (std::size_t k = 1; k < at.size(); ++k) EXPECT_GT(mean[k], mean[k - 1]);
}

TEST(RunTrial, InstabilityReferenceSwitches) {
  auto cfg = small_config(SamplerKind::Random, 5, 12, 21);
  cfg.agent.instability = InstabilityScenario::RandomSwitch;
  cfg.agent.t_change = 6;
  const auto trace = run_trial(cfg);
  const auto agent = build_agent(cfg.agent, cfg.space, cfg.seed);
  const auto sched = *agent.instability();
  for (const auto& s : trace.steps) {
    const Vector& ref = s.timestep < 6 ? sched.w_pre : sched.w_post;
    ASSERT_EQ(*s.distance, normalized_distance(s.w_hat, ref));
  }
}

TEST(TrialConfig, Validation) {
  auto cfg = small_config(SamplerKind::Random, 3, 0, 1);
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg.comparisons = 3;
  cfg.heldout_size = 0;
  EXPECT_THROW(run_trial(cfg), PreconditionError);
}

}  // namespace
