#include <gtest/gtest.h>

#include <cmath>

#include "prefsim/eval.hpp"

namespace {

using namespace prefsim;

AgentModel linear_agent(const Vector& w) { return AgentModel(LinearUtility{w}, NoiseSpec{}, RandomSource(1, "noise")); }

TEST(Accuracy, PerfectAndInvertedHypotheses) {
  RandomSource rng(1, "heldout");
  const auto space = FeatureSpace::integer_range(5);
  const auto heldout = make_heldout_set(space, 1000, rng);
  for (int rep = 0; rep < 50; ++rep) {
    const Vector w = sample_uniform_weights(5, rng);
    const auto agent = linear_agent(w);
    EXPECT_EQ(accuracy(Hypothesis{w}, agent, heldout, 1), 1.0);
    bool ties = false;
    for (Eigen::Index i = 0; i < heldout.diffs.cols(); ++i) ties |= w.dot(heldout.diffs.col(i)) == 0.0;
    if (!ties) EXPECT_EQ(accuracy(Hypothesis{Vector(-w)}, agent, heldout, 1), 0.0);
  }
}

TEST(Accuracy, EnumerationOverBinarySpace) {
  std::vector<Case> cases;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) cases.push_back(Case{Vector{{double(a), double(b)}}});
  std::vector<Comparison> all;
  for (const auto& l : cases)
    for (const auto& r : cases)
      if (!(l == r)) all.push_back({l, r});
  ASSERT_EQ(all.size(), 12u);
  const auto heldout = HeldoutSet::from(all);

  const Vector w{{0.6, -0.3}};
  const Hypothesis h{Vector{{1.0, 0.4}}};
  // Only the four pure b-moves disagree.
  int agree = 0;
  for (const auto& c : all) {
    const double du = 0.6 * (c.left.values[0] - c.right.values[0]) - 0.3 * (c.left.values[1] - c.right.values[1]);
    const double dh = 1.0 * (c.left.values[0] - c.right.values[0]) + 0.4 * (c.left.values[1] - c.right.values[1]);
    agree += (du > 0) == (dh > 0);
  }
  EXPECT_EQ(accuracy(h, linear_agent(w), heldout, 1), agree / 12.0);
  EXPECT_EQ(agree, 8);
}

TEST(Accuracy, ScaleInvariant) {
  RandomSource rng(2, "heldout");
  const auto space = FeatureSpace::integer_range(4);
  const auto heldout = make_heldout_set(space, 500, rng);
  for (int rep = 0; rep < 30; ++rep) {
    const Vector w = sample_uniform_weights(4, rng);
    const Vector wh = sample_uniform_weights(4, rng);
    const double base = accuracy(Hypothesis{wh}, linear_agent(w), heldout, 1);
    EXPECT_EQ(accuracy(Hypothesis{Vector(3.0 * wh)}, linear_agent(Vector(0.25 * w)), heldout, 1), base);
  }
}

TEST(Accuracy, ZeroHypothesis) {
  RandomSource rng(3, "heldout");
  const auto space = FeatureSpace::integer_range(3);
  const auto heldout = make_heldout_set(space, 300, rng);
  const Vector w{{1, 2, 3}};
  int zeros = 0;
  for (const auto& c : heldout.comparisons) zeros += w.dot(feature_diff(c)) > 0 ? 0 : 1;
  EXPECT_EQ(accuracy(Hypothesis{Vector()}, linear_agent(w), heldout, 1), zeros / 300.0);
  EXPECT_THROW(accuracy(Hypothesis{Vector::Ones(2)}, linear_agent(w), heldout, 1), StructuralError);
}

TEST(NormalizedDistance, Examples) {
  const Vector w{{0.3, -0.7, 0.2}};
  EXPECT_EQ(normalized_distance(Vector(2.5 * w), w), 0.0);
  EXPECT_EQ(normalized_distance(Vector(-w), w), 2.0);
  EXPECT_NEAR(normalized_distance(Vector{{1, 0}}, Vector{{0, 1}}), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(normalized_distance(Vector::Zero(3), w), kZeroHypothesisDistance);
  EXPECT_EQ(normalized_distance(Vector(), w), kZeroHypothesisDistance);
  EXPECT_THROW(normalized_distance(w, Vector(Vector::Zero(3))), PreconditionError);
  EXPECT_THROW(normalized_distance(Vector{{1, 0}}, w), StructuralError);
}

TEST(NormalizedDistance, ExactAtIdentityAndAntipode) {
  RandomSource rng(4, "dist");
  for (int i = 0; i < 20000; ++i) {
    const Vector w = sample_uniform_weights(2 + i % 15, rng);
    ASSERT_EQ(normalized_distance(w, w), 0.0);
    ASSERT_EQ(normalized_distance(Vector(-w), w), 2.0);
  }
}

TEST(NormalizedDistance, MetricProperties) {
  RandomSource rng(5, "dist");
  for (int i = 0; i < 2000; ++i) {
    const Vector a = sample_uniform_weights(4, rng), b = sample_uniform_weights(4, rng),
                 c = sample_uniform_weights(4, rng);
    const double ab = normalized_distance(a, b);
    ASSERT_NEAR(ab, normalized_distance(b, a), 1e-15);
    ASSERT_NEAR(ab, (a.normalized() - b.normalized()).norm(), 1e-14);
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 2.0);
    ASSERT_LE(normalized_distance(a, c), ab + normalized_distance(b, c) + 1e-14);
  }
}

TEST(Heldout, DiffColumns) {
  RandomSource rng(6, "heldout");
  const auto heldout = make_heldout_set(FeatureSpace::integer_range(3), 50, rng);
  ASSERT_EQ(heldout.diffs.rows(), 3);
  ASSERT_EQ(heldout.diffs.cols(), 50);
  for (std::size_t i = 0; i < heldout.size(); ++i)
    EXPECT_EQ(Vector(heldout.diffs.col(static_cast<Eigen::Index>(i))), feature_diff(heldout.comparisons[i]));
}

}  // namespace
