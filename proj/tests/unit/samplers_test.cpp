#include <gtest/gtest.h>

#include <cmath>

#include "prefsim/samplers.hpp"

namespace {

using namespace prefsim;

Case make_case(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return Case{x};
}

// Pool whose feature differences are exactly the given vectors.
std::vector<Comparison> pool_from_diffs(const std::vector<Vector>& diffs) {
  std::vector<Comparison> pool;
  for (const auto& z : diffs) pool.push_back({Case{Vector(z.array() + 10.0)}, Case{Vector::Constant(z.size(), 10.0)}});
  return pool;
}

std::vector<LabeledComparison> random_history(const FeatureSpace& space, int n, RandomSource& rng) {
  std::vector<LabeledComparison> h;
  for (int i = 0; i < n; ++i) {
    Comparison c{sample_case(space, rng), sample_case(space, rng)};
    if (feature_diff(c).isZero(0)) {
      --i;
      continue;
    }
    h.push_back({c, rng.uniform_int(0, 1), i + 1});
  }
  return h;
}

// Independent long-double evaluation of the closed-form score.
long double bald_reference(long double mu, long double s2) {
  const long double c = std::sqrt(3.14159265358979323846264338327950288L * 0.693147180559945309417232121458176568L / 2);
  const long double p = 0.5L * std::erfc(-mu / std::sqrt(s2 + 1) / std::sqrt(2.0L));
  const long double h = (p <= 0 || p >= 1) ? 0 : -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
  const long double v = h - c * std::exp(-mu * mu / (2 * (s2 + c * c))) / std::sqrt(s2 + c * c);
  return std::min(1.0L, std::max(0.0L, v));
}

TEST(SelectRandom, Basics) {
  RandomSource rng(1, "sampler");
  const auto one = pool_from_diffs({Vector{{1, 0}}});
  EXPECT_EQ(select_random(one, rng), 0u);
  EXPECT_THROW(select_random(std::span<const Comparison>{}, rng), PreconditionError);
  RandomSource a(2, "sampler"), b(2, "sampler");
  const auto pool = pool_from_diffs(std::vector<Vector>(10, Vector{{1, 0}}));
  for (int i = 0; i < 20; ++i) EXPECT_EQ(select_random(pool, a), select_random(pool, b));
}

TEST(SelectRandom, Uniform) {
  RandomSource rng(3, "sampler");
  const auto pool = pool_from_diffs(std::vector<Vector>(10, Vector{{1, 0}}));
  constexpr int kDraws = 100000;
  std::array<int, 10> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[select_random(pool, rng)];
  const double sigma = std::sqrt(kDraws * 0.1 * 0.9);
  for (int c : counts) EXPECT_LT(std::abs(c - kDraws * 0.1), 5 * sigma);
}

TEST(MinMargin, Examples) {
  const auto pool = pool_from_diffs({Vector{{4, 1}}, Vector{{0, 7}}, Vector{{-2, 2}}});
  EXPECT_EQ(select_min_margin(pool, Hypothesis{Vector{{1, 0}}}), 1u);
  EXPECT_EQ(select_min_margin(pool, Hypothesis{Vector::Zero(2)}), 0u);
  EXPECT_EQ(select_min_margin(pool, Hypothesis{Vector()}), 0u);
}

TEST(MinMargin, ExhaustiveOracle) {
  RandomSource rng(4, "sampler");
  const auto space = FeatureSpace::integer_range(2);
  for (int rep = 0; rep < 200; ++rep) {
    const auto history = random_history(space, 4, rng);
    const auto pool = sample_candidate_pool(space, 5, rng);
    const Vector w = fit_svm(history).w_hat;
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      const auto& l = pool[i].left.values;
      const auto& r = pool[i].right.values;
      const auto& bl = pool[best].left.values;
      const auto& br = pool[best].right.values;
      const double s = std::abs(w[0] * (l[0] - r[0]) + w[1] * (l[1] - r[1]));
      const double sb = std::abs(w[0] * (bl[0] - br[0]) + w[1] * (bl[1] - br[1]));
      if (s < sb) best = i;
    }
    RandomSource unused(0, "x");
    ASSERT_EQ(select_version_space(pool, history, unused), best);
  }
}

TEST(MinMargin, ScaleInvariant) {
  RandomSource rng(5, "sampler");
  const auto space = FeatureSpace::integer_range(4);
  for (int rep = 0; rep < 100; ++rep) {
    const auto pool = sample_candidate_pool(space, 50, rng);
    const Hypothesis h{Vector{{rng.normal(), rng.normal(), rng.normal(), rng.normal()}}};
    const auto base = select_min_margin(pool, h);
    for (double c : {0.5, 4.0}) ASSERT_EQ(select_min_margin(pool, Hypothesis{Vector(c * h.w_hat)}), base);
  }
}

TEST(MaxInformation, DegeneratePosteriorPicksFirst) {
  RandomSource rng(6, "sampler");
  const auto space = FeatureSpace::integer_range(3);
  ArdPosterior post;
  post.mean = Vector{{0.3, -1.2, 0.8}};
  post.covariance = Matrix::Zero(3, 3);
  post.alpha = Vector::Ones(3);
  const auto pool = sample_candidate_pool(space, 200, rng);
  for (const auto& c : pool) {
    const auto m = predictive(post, feature_diff(c));
    ASSERT_EQ(bald_score(m.mu, m.sigma2), 0.0);
  }
  EXPECT_EQ(select_max_information(pool, post), 0u);
}

TEST(MaxInformation, PrefersLargerVarianceAtZeroMean) {
  ArdPosterior post;
  post.mean = Vector::Zero(2);
  post.covariance = Matrix::Identity(2, 2);
  post.alpha = Vector::Ones(2);
  const auto pool = pool_from_diffs({Vector{{1, 0}}, Vector{{0, 2}}});
  EXPECT_EQ(select_max_information(pool, post), 1u);
}

TEST(MaxInformation, ExhaustiveOracle) {
  RandomSource rng(7, "sampler");
  const auto space = FeatureSpace::integer_range(3);
  for (int rep = 0; rep < 200; ++rep) {
    const auto history = random_history(space, 5, rng);
    const auto pool = sample_candidate_pool(space, 20, rng);
    const auto post = fit_ard(history);
    std::size_t best = 0;
    long double best_score = -1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const Vector z = feature_diff(pool[i]);
      long double mu = 0, s2 = 0;
      for (int a = 0; a < 3; ++a) {
        mu += static_cast<long double>(post.mean[a]) * z[a];
        for (int b = 0; b < 3; ++b) s2 += z[a] * static_cast<long double>(post.covariance(a, b)) * z[b];
      }
      const long double s = bald_reference(mu, s2);
      if (s > best_score + 1e-12L) best = i, best_score = s;
    }
    RandomSource unused(0, "x");
    ASSERT_EQ(select_bald(pool, history, unused), best) << "rep " << rep;
  }
}

TEST(MaxInformation, LabelAndDirectionFlipInvariance) {
  RandomSource rng(8, "sampler");
  const auto space = FeatureSpace::integer_range(3);
  for (int rep = 0; rep < 100; ++rep) {
    const auto history = random_history(space, 6, rng);
    const auto pool = sample_candidate_pool(space, 40, rng);
    auto flipped_history = history;
    for (auto& h : flipped_history) h.response = 1 - h.response;
    std::vector<Comparison> flipped_pool;
    for (const auto& c : pool) flipped_pool.push_back({c.right, c.left});
    RandomSource unused(0, "x");
    ASSERT_EQ(select_bald(pool, history, unused), select_bald(flipped_pool, flipped_history, unused));
  }
}

TEST(Select, ColdStartIsRandom) {
  RandomSource rng(9, "pool");
  const auto pool = sample_candidate_pool(FeatureSpace::integer_range(4), 100, rng);
  for (auto kind : all_sampler_kinds()) {
    RandomSource a(10, "sampler"), b(10, "sampler");
    for (int i = 0; i < 10; ++i) ASSERT_EQ(select(kind, pool, {}, a), select_random(pool, b));
  }
}

TEST(Select, AlwaysInPool) {
  RandomSource rng(11, "sampler");
  const auto space = FeatureSpace::integer_range(3);
  const auto history = random_history(space, 8, rng);
  for (auto kind : all_sampler_kinds()) {
    for (std::size_t m : {1u, 2u, 37u}) {
      const auto pool = sample_candidate_pool(space, m, rng);
      ASSERT_LT(select(kind, pool, history, rng), m);
    }
  }
}

TEST(SamplerKind, Names) {
  for (auto k : all_sampler_kinds()) EXPECT_EQ(parse_sampler_kind(to_string(k)), k);
  EXPECT_EQ(to_string(SamplerKind::VersionSpace), "version-space");
  EXPECT_THROW(parse_sampler_kind("greedy"), ConfigError);
}

}  // namespace
