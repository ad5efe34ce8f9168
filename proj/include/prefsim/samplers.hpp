#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "prefsim/bayes.hpp"
#include "prefsim/core.hpp"
#include "prefsim/svm.hpp"

namespace prefsim {

enum class SamplerKind { Random, VersionSpace, Bayes };

/// "random", "version-space", "bayes"
std::string to_string(SamplerKind kind);
SamplerKind parse_sampler_kind(const std::string& name);
const std::vector<SamplerKind>& all_sampler_kinds();

struct SamplerConfig {
  SamplerKind kind = SamplerKind::Random;
  std::size_t pool_size = 1000;
};

/// Each selector returns an index into the pool.

std::size_t select_random(std::span<const Comparison> pool, RandomSource& rng);

/// argmin_i |w'(x_i - x'_i)|, lowest index on ties.
std::size_t select_min_margin(std::span<const Comparison> pool, const Hypothesis& h);
/// argmax_i bald_score of each candidate's difference, lowest index on ties.
std::size_t select_max_information(std::span<const Comparison> pool, const ArdPosterior& post);

/// Margin sampling against an SVM refit on the history. Falls back to
/// select_random when the history is empty.
std::size_t select_version_space(std::span<const Comparison> pool,
                                 std::span<const LabeledComparison> history, RandomSource& rng,
                                 const SvmOptions& svm = {});
/// BALD sampling against an ARD posterior fit on the history. Falls back to
/// select_random when the history is empty.
std::size_t select_bald(std::span<const Comparison> pool, std::span<const LabeledComparison> history,
                        RandomSource& rng, const ArdOptions& ard = {});

std::size_t select(SamplerKind kind, std::span<const Comparison> pool,
                   std::span<const LabeledComparison> history, RandomSource& rng,
                   const SvmOptions& svm = {}, const ArdOptions& ard = {});

}  // namespace prefsim
