#include <gtest/gtest.h>

#include <set>

#include "prefsim/scenarios.hpp"

namespace {

using namespace prefsim;

const ExperimentSpec& builtin(const std::string& name) { return builtin_catalogue().at(name); }

TEST(Expand, InstabilityCount) {
  auto spec = builtin("instability");
  EXPECT_EQ(expand(spec).size(), spec.scenarios.size() * 6 * 50 * 3);
  spec.agents_per_cell = 1;
  EXPECT_EQ(expand(spec).size(), spec.cells().size() * 3);
}

TEST(Expand, Deterministic) {
  auto spec = builtin("misspec-interactions");
  spec.agents_per_cell = 3;
  const auto a = expand(spec), b = expand(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].index, i);
    EXPECT_EQ(a[i].config.seed, b[i].config.seed);
    EXPECT_EQ(a[i].sampler, b[i].sampler);
    EXPECT_EQ(a[i].cell.k, b[i].cell.k);
  }
}

TEST(Expand, SeedsIgnoreSamplerButNotAgentOrCell) {
  auto spec = builtin("noise-response");
  spec.agents_per_cell = 4;
  const auto plans = expand(spec);
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < plans.size(); i += 3) {
    ASSERT_EQ(plans[i].config.seed, plans[i + 1].config.seed);
    ASSERT_EQ(plans[i].config.seed, plans[i + 2].config.seed);
    ASSERT_EQ(plans[i].agent_index, plans[i + 2].agent_index);
    seeds.insert(plans[i].config.seed);
  }
  EXPECT_EQ(seeds.size(), plans.size() / 3);

  auto other = spec;
  other.samplers = {SamplerKind::Bayes};
  const auto solo = expand(other);
  EXPECT_EQ(solo[0].config.seed, plans[0].config.seed);
  other.master_seed = 1;
  EXPECT_NE(expand(other)[0].config.seed, plans[0].config.seed);
}

TEST(Expand, InconsistentGrids) {
  ExperimentSpec spec;
  spec.name = "bad";
  spec.family = Family::Instability;
  spec.scenarios = {"downscale-ordered-4"};
  spec.d_values = {3};
  spec.t_change_values = {10};
  EXPECT_THROW(expand(spec), ConfigError);
  spec.d_values = {4};
  EXPECT_NO_THROW(expand(spec));
  spec.t_change_values = {};
  EXPECT_THROW(expand(spec), ConfigError);

  ExperimentSpec inter = builtin("misspec-interactions");
  inter.d_values = {3};
  EXPECT_THROW(inter.cells(), ConfigError);

  ExperimentSpec noise = builtin("noise-response");
  noise.scenarios = {"thermal"};
  EXPECT_THROW(noise.cells(), ConfigError);
  noise.scenarios = {"response"};
  noise.sigma_values = {-1};
  EXPECT_THROW(noise.cells(), ConfigError);
  noise.sigma_values = {1};
  noise.samplers = {};
  EXPECT_THROW(noise.cells(), ConfigError);
}

TEST(Catalogue, Contents) {
  const auto& ideal = builtin("ideal");
  EXPECT_EQ(ideal.samplers.size(), 3u);
  EXPECT_EQ(ideal.d_values, (std::vector<int>{5, 10, 15}));
  for (const auto* name : {"ideal", "instability", "misspec-tree", "misspec-interactions", "misspec-missing",
                           "noise-response", "noise-preference", "noise-timevariant"})
    EXPECT_TRUE(builtin_catalogue().contains(name)) << name;
}

TEST(Catalogue, EveryScenarioExactlyOnce) {
  std::map<std::string, int> seen;
  for (const auto& [name, spec] : builtin_catalogue())
    for (const auto& s : spec.scenarios) ++seen[s];
  std::vector<std::string> expected{"ideal", "tree", "interactions", "missing", "response", "preference",
                                    "response-tv", "preference-tv"};
  for (auto s : all_instability_scenarios()) expected.push_back(to_string(s));
  EXPECT_EQ(seen.size(), expected.size());
  for (const auto& s : expected) EXPECT_EQ(seen[s], 1) << s;
}

TEST(Catalogue, TreeDepthAndTimeVariantNoise) {
  auto tree = builtin("misspec-tree");
  tree.agents_per_cell = 1;
  bool saw16 = false;
  for (const auto& p : expand(tree)) {
    if (p.cell.d != 16) continue;
    saw16 = true;
    const auto agent = build_agent(p.config.agent, p.config.space, p.config.seed);
    EXPECT_EQ(std::get<TreeUtility>(agent.utility()).depth, 4);
  }
  EXPECT_TRUE(saw16);

  auto tv = builtin("noise-timevariant");
  tv.agents_per_cell = 1;
  for (const auto& p : expand(tv)) {
    const auto& noise = p.config.agent.noise;
    EXPECT_TRUE(noise.time_variant);
    EXPECT_EQ(noise.effective_sigma(4), *p.cell.sigma / 2);
  }
}

TEST(Family, Names) {
  for (auto f : {Family::Ideal, Family::Instability, Family::Misspecification, Family::Noise})
    EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_THROW(parse_family("weather"), ConfigError);
}

}  // namespace
