#include "prefsim/agents.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace prefsim {

namespace {

struct ScenarioName {
  InstabilityScenario scenario;
  const char* name;
  int features;
};

constexpr ScenarioName kScenarioNames[] = {
    {InstabilityScenario::DownscaleOrdered, "downscale-ordered", 1},
    {InstabilityScenario::DownscaleRandom, "downscale-random", 1},
    {InstabilityScenario::DownscaleOrdered2, "downscale-ordered-2", 2},
    {InstabilityScenario::DownscaleOrdered4, "downscale-ordered-4", 4},
    {InstabilityScenario::UpscaleOrdered, "upscale-ordered", 1},
    {InstabilityScenario::UpscaleRandom, "upscale-random", 1},
    {InstabilityScenario::UpscaleOrdered2, "upscale-ordered-2", 2},
    {InstabilityScenario::UpscaleOrdered4, "upscale-ordered-4", 4},
    {InstabilityScenario::RandomSwitch, "random-switch", 0},
};

const ScenarioName& lookup(InstabilityScenario s) {
  for (const auto& e : kScenarioNames)
    if (e.scenario == s) return e;
  throw PreconditionError("unknown instability scenario");
}

Vector keep_one(const Vector& w, Eigen::Index i) {
  Vector out = Vector::Zero(w.size());
  out[i] = w[i];
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

int TreeUtility::leaf_index(const Vector& x) const {
  int node = 0;
  for (int level = 0; level < depth; ++level) {
    const auto i = static_cast<std::size_t>(node);
    node = x[features[i]] <= thresholds[i] ? 2 * node + 1 : 2 * node + 2;
  }
  return node - internal_count();
}

Vector HiddenFeatureUtility::hidden_values(const Vector& x) const {
  SeedHasher base(key);
  for (double v : x) base.add(v);
  Vector h(hidden);
  const auto count = static_cast<std::uint64_t>(space.value_count());
  for (int j = 0; j < hidden; ++j) {
    const std::uint64_t bits = SeedHasher(base.value()).add(j).value();
    h[j] = space.lo + static_cast<double>(bits % count);
  }
  return h;
}

std::string to_string(InstabilityScenario s) { return lookup(s).name; }

InstabilityScenario parse_instability_scenario(const std::string& name) {
  for (const auto& e : kScenarioNames)
    if (name == e.name) return e.scenario;
  throw ConfigError("unknown instability scenario '" + name + "'");
}

const std::vector<InstabilityScenario>& all_instability_scenarios() {
  static const std::vector<InstabilityScenario> all = [] {
    std::vector<InstabilityScenario> v;
    for (const auto& e : kScenarioNames) v.push_back(e.scenario);
    return v;
  }();
  return all;
}

int scenario_feature_count(InstabilityScenario s) { return lookup(s).features; }

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Response: return "response";
    case NoiseKind::Preference: return "preference";
    case NoiseKind::None: break;
  }
  return "none";
}

double NoiseSpec::effective_sigma(int t) const {
  return time_variant ? sigma / std::sqrt(static_cast<double>(t)) : sigma;
}

AgentModel::AgentModel(UtilityModel utility, NoiseSpec noise, RandomSource noise_rng,
                       std::optional<InstabilitySchedule> instability)
    : utility_(std::move(utility)),
      noise_(noise),
      noise_rng_(std::move(noise_rng)),
      instability_(std::move(instability)) {
  const bool linear = std::holds_alternative<LinearUtility>(utility_);
  if (instability_ && !linear)
    throw PreconditionError("preference instability requires a linear utility");
  if (noise_.kind == NoiseKind::Preference && !linear)
    throw PreconditionError("preference noise requires a linear utility");
  if (noise_.sigma < 0.0 || !std::isfinite(noise_.sigma))
    throw PreconditionError("noise sigma must be finite and non-negative");
}

int AgentModel::dimension() const {
  return std::visit(Overloaded{
                        [](const LinearUtility& u) { return static_cast<int>(u.w.size()); },
                        [](const TreeUtility& u) { return u.d; },
                        [](const InteractionUtility& u) { return static_cast<int>(u.w.size()); },
                        [](const HiddenFeatureUtility& u) { return u.visible; },
                    },
                    utility_);
}

double AgentModel::utility_of(const Case& x, int t) const {
  return std::visit(
      Overloaded{
          [&](const LinearUtility& u) {
            const Vector& w = instability_ ? instability_->active(t) : u.w;
            return w.dot(x.values);
          },
          [&](const TreeUtility& u) { return u.leaves[u.leaf_index(x.values)]; },
          [&](const InteractionUtility& u) {
            double value = u.w.dot(x.values);
            for (std::size_t k = 0; k < u.pairs.size(); ++k)
              value += u.pair_weights[static_cast<Eigen::Index>(k)] * x.values[u.pairs[k].first] *
                       x.values[u.pairs[k].second];
            return value;
          },
          [&](const HiddenFeatureUtility& u) {
            return u.w_full.head(u.visible).dot(x.values) +
                   u.w_full.tail(u.hidden).dot(u.hidden_values(x.values));
          },
      },
      utility_);
}

int AgentModel::reference_response(const Comparison& c, int t) const {
  if (const auto* lin = std::get_if<LinearUtility>(&utility_)) {
    // w'(x - x') > 0, evaluated the way predict() evaluates a hypothesis
    const Vector& w = instability_ ? instability_->active(t) : lin->w;
    return w.dot(feature_diff(c)) > 0.0 ? 1 : 0;
  }
  return utility_of(c.left, t) > utility_of(c.right, t) ? 1 : 0;
}

int AgentModel::respond(const Comparison& c, int t) {
  if (!noise_.active()) return reference_response(c, t);
  const double sigma_hat = noise_.effective_sigma(t);
  if (noise_.kind == NoiseKind::Response) {
    const double eps = noise_rng_.normal(0.0, sigma_hat);
    return utility_of(c.left, t) - utility_of(c.right, t) + eps > 0.0 ? 1 : 0;
  }
  // preference noise: w ~ N(w*, sigma_hat^2 I / d), fresh per query
  const Vector& center = std::get<LinearUtility>(utility_).w;
  const double sd = sigma_hat / std::sqrt(static_cast<double>(center.size()));
  Vector w(center.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = noise_rng_.normal(center[i], sd);
  return w.dot(feature_diff(c)) > 0.0 ? 1 : 0;
}

std::optional<Vector> AgentModel::reference_weights(int t) const {
  const auto* lin = std::get_if<LinearUtility>(&utility_);
  if (lin == nullptr) return std::nullopt;
  if (instability_) return instability_->active(t);
  return lin->w;
}

std::optional<Vector> AgentModel::summary_weights() const {
  const auto* lin = std::get_if<LinearUtility>(&utility_);
  if (lin == nullptr) return std::nullopt;
  return lin->w;
}

Vector sample_uniform_weights(int d, RandomSource& rng) {
  Vector w(d);
  for (int i = 0; i < d; ++i) w[i] = rng.uniform(-1.0, 1.0);
  return w;
}

Vector keep_top_k(const Vector& w, int k) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(w.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(w[a]) > std::abs(w[b]);
  });
  Vector out = Vector::Zero(w.size());
  for (int i = 0; i < k && i < static_cast<int>(order.size()); ++i)
    out[order[static_cast<std::size_t>(i)]] = w[order[static_cast<std::size_t>(i)]];
  return out;
}

InstabilitySchedule make_instability(InstabilityScenario scenario, int d, int t_change,
                                     RandomSource& rng) {
  const int needed = std::max(1, scenario_feature_count(scenario));
  if (d < needed)
    throw PreconditionError(to_string(scenario) + " needs d >= " + std::to_string(needed));
  if (t_change < 1) throw PreconditionError("t_change must be >= 1");

  InstabilitySchedule s;
  s.t_change = t_change;
  s.scenario = scenario;
  switch (scenario) {
    case InstabilityScenario::DownscaleOrdered:
    case InstabilityScenario::DownscaleOrdered2:
    case InstabilityScenario::DownscaleOrdered4:
      s.w_pre = sample_uniform_weights(d, rng);
      s.w_post = keep_top_k(s.w_pre, scenario_feature_count(scenario));
      break;
    case InstabilityScenario::DownscaleRandom:
      s.w_pre = sample_uniform_weights(d, rng);
      s.w_post = keep_one(s.w_pre, static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(d))));
      break;
    case InstabilityScenario::UpscaleOrdered:
    case InstabilityScenario::UpscaleOrdered2:
    case InstabilityScenario::UpscaleOrdered4:
      s.w_post = sample_uniform_weights(d, rng);
      s.w_pre = keep_top_k(s.w_post, scenario_feature_count(scenario));
      break;
    case InstabilityScenario::UpscaleRandom:
      s.w_post = sample_uniform_weights(d, rng);
      s.w_pre = keep_one(s.w_post, static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(d))));
      break;
    case InstabilityScenario::RandomSwitch:
      s.w_pre = sample_uniform_weights(d, rng);
      s.w_post = sample_uniform_weights(d, rng);
      break;
  }
  return s;
}

int tree_depth_for(int d) {
  if (d < 2) throw PreconditionError("tree utility needs d >= 2");
  return static_cast<int>(std::bit_width(static_cast<unsigned>(d))) - 1;
}

TreeUtility make_tree_utility(int d, const FeatureSpace& space, RandomSource& rng) {
  TreeUtility tree;
  tree.d = d;
  tree.depth = tree_depth_for(d);
  const int internal = tree.internal_count();
  tree.features.reserve(static_cast<std::size_t>(internal));
  tree.thresholds.reserve(static_cast<std::size_t>(internal));
  for (int i = 0; i < internal; ++i) {
    tree.features.push_back(static_cast<int>(rng.index(static_cast<std::size_t>(d))));
    // midpoints {lo + 0.5, ..., hi - 0.5}; 0.5 on a binary space
    tree.thresholds.push_back(rng.uniform_int(space.lo, space.hi - 1) + 0.5);
  }
  tree.leaves = sample_uniform_weights(internal + 1, rng);
  return tree;
}

InteractionUtility make_interaction_utility(int d, int k, RandomSource& rng) {
  if (d < 1) throw PreconditionError("interaction utility needs d >= 1");
  const int max_pairs = d * (d - 1) / 2;
  if (k < 0 || k > max_pairs)
    throw PreconditionError("interaction count k=" + std::to_string(k) + " outside [0, " +
                            std::to_string(max_pairs) + "]");
  InteractionUtility u;
  u.w = sample_uniform_weights(d, rng);
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) all.emplace_back(i, j);
  // partial Fisher-Yates: the first k slots are a uniform k-subset
  for (int i = 0; i < k; ++i) {
    const auto remaining = all.size() - static_cast<std::size_t>(i);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(i) + rng.index(remaining)]);
  }
  u.pairs.assign(all.begin(), all.begin() + k);
  std::sort(u.pairs.begin(), u.pairs.end());
  u.pair_weights = sample_uniform_weights(k, rng);
  return u;
}

HiddenFeatureUtility make_hidden_feature_utility(int d, int m, const FeatureSpace& space,
                                                 RandomSource& rng) {
  if (d < 1) throw PreconditionError("hidden-feature utility needs d >= 1");
  if (m < 1) throw PreconditionError("hidden-feature utility needs m >= 1 missing features");
  HiddenFeatureUtility u;
  u.w_full = sample_uniform_weights(d + m, rng);
  u.visible = d;
  u.hidden = m;
  u.space = space;
  u.key = rng.engine()();
  return u;
}

}  // namespace prefsim
