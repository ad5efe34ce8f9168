#include "prefsim/scenarios.hpp"

#include <algorithm>

namespace prefsim {

namespace {

bool is_noise_scenario(const std::string& s) {
  return s == "response" || s == "preference" || s == "response-tv" || s == "preference-tv";
}

template <typename T>
void require_axis(const std::vector<T>& axis, const std::string& what, const ExperimentSpec& spec) {
  if (axis.empty())
    throw ConfigError("experiment '" + spec.name + "' needs at least one " + what + " value");
}

void check_d(int d, int minimum, const std::string& scenario) {
  if (d < minimum)
    throw ConfigError("scenario '" + scenario + "' needs d >= " + std::to_string(minimum) +
                      " (got d=" + std::to_string(d) + ")");
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::Instability: return "instability";
    case Family::Misspecification: return "misspecification";
    case Family::Noise: return "noise";
    case Family::Ideal: break;
  }
  return "ideal";
}

Family parse_family(const std::string& name) {
  if (name == "ideal") return Family::Ideal;
  if (name == "instability") return Family::Instability;
  if (name == "misspecification") return Family::Misspecification;
  if (name == "noise") return Family::Noise;
  throw ConfigError("unknown experiment family '" + name + "'");
}

std::vector<CellParams> ExperimentSpec::cells() const {
  require_axis(scenarios, "scenario", *this);
  require_axis(d_values, "d", *this);
  require_axis(feature_kinds, "feature_kind", *this);
  if (samplers.empty()) throw ConfigError("experiment '" + name + "' needs at least one sampler");
  if (agents_per_cell < 1) throw ConfigError("agents_per_cell must be >= 1");
  if (comparisons < 1) throw ConfigError("N must be >= 1");
  if (pool_size < 1) throw ConfigError("pool_size must be >= 1");
  if (heldout_size < 1) throw ConfigError("heldout_size must be >= 1");
  for (int d : d_values)
    if (d < 1) throw ConfigError("d values must be >= 1");

  std::vector<CellParams> out;
  for (const auto& scenario : scenarios) {
    for (int d : d_values) {
      for (FeatureKind kind : feature_kinds) {
        CellParams base;
        base.scenario = scenario;
        base.d = d;
        base.feature_kind = kind;
        switch (family) {
          case Family::Ideal:
            if (scenario != "ideal") throw ConfigError("ideal family only has scenario 'ideal'");
            out.push_back(base);
            break;
          case Family::Instability: {
            const auto s = parse_instability_scenario(scenario);
            check_d(d, std::max(1, scenario_feature_count(s)), scenario);
            require_axis(t_change_values, "t_change", *this);
            for (int tc : t_change_values) {
              if (tc < 1) throw ConfigError("t_change values must be >= 1");
              CellParams c = base;
              c.t_change = tc;
              out.push_back(c);
            }
            break;
          }
          case Family::Misspecification:
            if (scenario == "tree") {
              check_d(d, 2, scenario);
              out.push_back(base);
            } else if (scenario == "interactions") {
              require_axis(k_values, "k", *this);
              for (int k : k_values) {
                if (k < 0 || k > d * (d - 1) / 2)
                  throw ConfigError("interaction count k=" + std::to_string(k) + " exceeds d(d-1)/2 for d=" +
                                    std::to_string(d));
                CellParams c = base;
                c.k = k;
                out.push_back(c);
              }
            } else if (scenario == "missing") {
              require_axis(m_values, "m", *this);
              for (int m : m_values) {
                if (m < 1) throw ConfigError("missing feature count m must be >= 1");
                CellParams c = base;
                c.m = m;
                out.push_back(c);
              }
            } else {
              throw ConfigError("unknown misspecification scenario '" + scenario + "'");
            }
            break;
          case Family::Noise:
            if (!is_noise_scenario(scenario)) throw ConfigError("unknown noise scenario '" + scenario + "'");
            require_axis(sigma_values, "sigma", *this);
            for (double sigma : sigma_values) {
              if (!(sigma >= 0.0)) throw ConfigError("sigma values must be >= 0");
              CellParams c = base;
              c.sigma = sigma;
              out.push_back(c);
            }
            break;
        }
      }
    }
  }
  return out;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, Family family, const CellParams& cell,
                                int agent_index) {
  SeedHasher h(master_seed);
  h.add(std::string_view(to_string(family)));
  h.add(std::string_view(cell.scenario));
  h.add(cell.d);
  h.add(cell.t_change.value_or(-1));
  h.add(cell.sigma.has_value() ? 1 : 0).add(cell.sigma.value_or(0.0));
  h.add(cell.k.value_or(-1));
  h.add(cell.m.value_or(-1));
  h.add(std::string_view(to_string(cell.feature_kind)));
  h.add(agent_index);
  return h.value();
}

AgentSpec agent_spec_for(Family family, const CellParams& cell) {
  AgentSpec a;
  switch (family) {
    case Family::Ideal: break;
    case Family::Instability:
      a.instability = parse_instability_scenario(cell.scenario);
      a.t_change = cell.t_change.value_or(1);
      break;
    case Family::Misspecification:
      if (cell.scenario == "tree") {
        a.utility = UtilityKind::Tree;
      } else if (cell.scenario == "interactions") {
        a.utility = UtilityKind::Interaction;
        a.interactions = cell.k.value_or(0);
      } else {
        a.utility = UtilityKind::HiddenFeature;
        a.missing = cell.m.value_or(1);
      }
      break;
    case Family::Noise:
      a.noise.kind = cell.scenario.starts_with("response") ? NoiseKind::Response : NoiseKind::Preference;
      a.noise.sigma = cell.sigma.value_or(0.0);
      a.noise.time_variant = cell.scenario.ends_with("-tv");
      break;
  }
  return a;
}

std::vector<TrialPlan> expand(const ExperimentSpec& spec) {
  const auto cells = spec.cells();
  std::vector<TrialPlan> plans;
  plans.reserve(cells.size() * static_cast<std::size_t>(spec.agents_per_cell) * spec.samplers.size());
  for (const auto& cell : cells) {
    const FeatureSpace space = cell.feature_kind == FeatureKind::Binary
                                   ? FeatureSpace::binary(cell.d)
                                   : FeatureSpace::integer_range(cell.d);
    const AgentSpec agent = agent_spec_for(spec.family, cell);
    for (int a = 0; a < spec.agents_per_cell; ++a) {
      const std::uint64_t seed = derive_trial_seed(spec.master_seed, spec.family, cell, a);
      for (SamplerKind sampler : spec.samplers) {
        TrialPlan p;
        p.index = plans.size();
        p.experiment = spec.name;
        p.cell = cell;
        p.sampler = sampler;
        p.agent_index = a;
        p.config.space = space;
        p.config.comparisons = spec.comparisons;
        p.config.agent = agent;
        p.config.sampler = SamplerConfig{sampler, spec.pool_size};
        p.config.heldout_size = spec.heldout_size;
        p.config.seed = seed;
        p.config.svm = spec.svm;
        p.config.ard = spec.ard;
        plans.push_back(std::move(p));
      }
    }
  }
  return plans;
}

const std::map<std::string, ExperimentSpec>& builtin_catalogue() {
  static const std::map<std::string, ExperimentSpec> catalogue = [] {
    std::map<std::string, ExperimentSpec> c;
    auto add = [&](ExperimentSpec s) { c.emplace(s.name, std::move(s)); };

    ExperimentSpec ideal;
    ideal.name = "ideal";
    ideal.family = Family::Ideal;
    ideal.scenarios = {"ideal"};
    ideal.d_values = {5, 10, 15};
    add(ideal);

    ExperimentSpec instability;
    instability.name = "instability";
    instability.family = Family::Instability;
    for (auto s : all_instability_scenarios()) instability.scenarios.push_back(to_string(s));
    instability.d_values = {5, 10};
    instability.t_change_values = {10, 20, 30};
    add(instability);

    ExperimentSpec tree;
    tree.name = "misspec-tree";
    tree.family = Family::Misspecification;
    tree.scenarios = {"tree"};
    tree.d_values = {4, 8, 16};
    tree.feature_kinds = {FeatureKind::Binary, FeatureKind::IntegerRange};
    add(tree);

    ExperimentSpec interactions;
    interactions.name = "misspec-interactions";
    interactions.family = Family::Misspecification;
    interactions.scenarios = {"interactions"};
    interactions.d_values = {5, 10};
    interactions.k_values = {1, 2, 4, 8};
    add(interactions);

    ExperimentSpec missing;
    missing.name = "misspec-missing";
    missing.family = Family::Misspecification;
    missing.scenarios = {"missing"};
    missing.d_values = {5, 10};
    missing.m_values = {1, 2, 5};
    add(missing);

    ExperimentSpec response;
    response.name = "noise-response";
    response.family = Family::Noise;
    response.scenarios = {"response"};
    response.d_values = {5};
    response.sigma_values = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
    add(response);

    ExperimentSpec preference = response;
    preference.name = "noise-preference";
    preference.scenarios = {"preference"};
    add(preference);

    ExperimentSpec timevariant = response;
    timevariant.name = "noise-timevariant";
    timevariant.scenarios = {"response-tv", "preference-tv"};
    timevariant.sigma_values = {1.0, 2.0, 5.0, 10.0};
    add(timevariant);
    return c;
  }();
  return catalogue;
}

}  // namespace prefsim
