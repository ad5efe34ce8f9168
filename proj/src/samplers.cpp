#include "prefsim/samplers.hpp"

#include <cmath>

namespace prefsim {

namespace {

void require_pool(std::span<const Comparison> pool) {
  if (pool.empty()) throw PreconditionError("candidate pool is empty");
}

}  // namespace

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::VersionSpace: return "version-space";
    case SamplerKind::Bayes: return "bayes";
    case SamplerKind::Random: break;
  }
  return "random";
}

SamplerKind parse_sampler_kind(const std::string& name) {
  if (name == "random") return SamplerKind::Random;
  if (name == "version-space") return SamplerKind::VersionSpace;
  if (name == "bayes") return SamplerKind::Bayes;
  throw ConfigError("unknown sampler '" + name + "' (expected random, version-space or bayes)");
}

const std::vector<SamplerKind>& all_sampler_kinds() {
  static const std::vector<SamplerKind> all{SamplerKind::Random, SamplerKind::VersionSpace,
                                            SamplerKind::Bayes};
  return all;
}

std::size_t select_random(std::span<const Comparison> pool, RandomSource& rng) {
  require_pool(pool);
  return rng.index(pool.size());
}

std::size_t select_min_margin(std::span<const Comparison> pool, const Hypothesis& h) {
  require_pool(pool);
  if (h.w_hat.size() == 0) return 0;
  std::size_t best = 0;
  double best_score = std::abs(h.w_hat.dot(feature_diff(pool[0])));
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double score = std::abs(h.w_hat.dot(feature_diff(pool[i])));
    if (score < best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

std::size_t select_max_information(std::span<const Comparison> pool, const ArdPosterior& post) {
  require_pool(pool);
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto moments = predictive(post, feature_diff(pool[i]));
    const double score = bald_score(moments.mu, moments.sigma2);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

std::size_t select_version_space(std::span<const Comparison> pool,
                                 std::span<const LabeledComparison> history, RandomSource& rng,
                                 const SvmOptions& svm) {
  if (history.empty()) return select_random(pool, rng);
  require_pool(pool);
  return select_min_margin(pool, fit_svm(history, svm));
}

std::size_t select_bald(std::span<const Comparison> pool, std::span<const LabeledComparison> history,
                        RandomSource& rng, const ArdOptions& ard) {
  if (history.empty()) return select_random(pool, rng);
  require_pool(pool);
  return select_max_information(pool, fit_ard(history, ard));
}

std::size_t select(SamplerKind kind, std::span<const Comparison> pool,
                   std::span<const LabeledComparison> history, RandomSource& rng,
                   const SvmOptions& svm, const ArdOptions& ard) {
  switch (kind) {
    case SamplerKind::VersionSpace: return select_version_space(pool, history, rng, svm);
    case SamplerKind::Bayes: return select_bald(pool, history, rng, ard);
    case SamplerKind::Random: break;
  }
  return select_random(pool, rng);
}

}  // namespace prefsim
