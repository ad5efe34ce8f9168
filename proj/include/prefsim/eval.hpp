#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "prefsim/agents.hpp"
#include "prefsim/core.hpp"
#include "prefsim/svm.hpp"

namespace prefsim {

/// Fixed evaluation comparisons for one trial. Reference responses are not
/// stored: they are recomputed from the agent at each evaluation timestep.
struct HeldoutSet {
  std::vector<Comparison> comparisons;
  Matrix diffs;  // column i = feature_diff(comparisons[i])

  static HeldoutSet from(std::vector<Comparison> comparisons);
  std::size_t size() const { return comparisons.size(); }
};

HeldoutSet make_heldout_set(const FeatureSpace& space, std::size_t size, RandomSource& rng);

/// Fraction of held-out comparisons where predict(h, c) equals the agent's
/// noiseless reference response at timestep t.
double accuracy(const Hypothesis& h, const AgentModel& agent, const HeldoutSet& heldout, int t);

/// Worst-case distance reported for a zero hypothesis.
inline constexpr double kZeroHypothesisDistance = 2.0;

/// | w_hat/|w_hat| - w_ref/|w_ref| |_2, in [0, 2]. A zero (or empty) w_hat
/// gives 2.0. Throws PreconditionError when w_ref is zero.
template <typename DerivedA, typename DerivedB>
double normalized_distance(const Eigen::MatrixBase<DerivedA>& w_hat,
                           const Eigen::MatrixBase<DerivedB>& w_ref) {
  const double ref_norm = w_ref.norm();
  if (ref_norm == 0.0) throw PreconditionError("normalized distance is undefined for a zero reference");
  if (w_hat.size() == 0) return kZeroHypothesisDistance;
  if (w_hat.size() != w_ref.size()) throw StructuralError("normalized distance: dimension mismatch");
  const double hat_norm = w_hat.norm();
  if (hat_norm == 0.0) return kZeroHypothesisDistance;
  // |u-v|^2 + |u+v|^2 is 4 for unit u, v; dividing by it keeps u = v at
  // exactly 0 and u = -v at exactly 2 despite rounding in the norms.
  const auto u = (w_hat / hat_norm).eval();
  const auto v = (w_ref / ref_norm).eval();
  const double diff2 = (u - v).squaredNorm();
  const double sum2 = (u + v).squaredNorm();
  return 2.0 * std::sqrt(diff2) / std::sqrt(diff2 + sum2);
}

}  // namespace prefsim
