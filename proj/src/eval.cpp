#include "prefsim/eval.hpp"

namespace prefsim {

HeldoutSet HeldoutSet::from(std::vector<Comparison> comparisons) {
  HeldoutSet set;
  set.comparisons = std::move(comparisons);
  if (set.comparisons.empty()) return set;
  const Eigen::Index d = set.comparisons.front().left.size();
  set.diffs.resize(d, static_cast<Eigen::Index>(set.comparisons.size()));
  for (std::size_t i = 0; i < set.comparisons.size(); ++i)
    set.diffs.col(static_cast<Eigen::Index>(i)) = feature_diff(set.comparisons[i]);
  return set;
}

HeldoutSet make_heldout_set(const FeatureSpace& space, std::size_t size, RandomSource& rng) {
  return HeldoutSet::from(sample_candidate_pool(space, size, rng));
}

double accuracy(const Hypothesis& h, const AgentModel& agent, const HeldoutSet& heldout, int t) {
  if (heldout.size() == 0) throw PreconditionError("held-out set is empty");
  const bool zero = h.w_hat.size() == 0;
  if (!zero && h.w_hat.size() != heldout.diffs.rows())
    throw StructuralError("hypothesis/held-out dimension mismatch");

  // Same dot-product path as predict() and the linear agent's reference, so a
  // hypothesis equal to the agent's weights agrees bit for bit.
  std::size_t agree = 0;
  for (std::size_t i = 0; i < heldout.size(); ++i) {
    const int predicted =
        !zero && h.w_hat.dot(heldout.diffs.col(static_cast<Eigen::Index>(i))) > 0.0 ? 1 : 0;
    if (predicted == agent.reference_response(heldout.comparisons[i], t)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(heldout.size());
}

}  // namespace prefsim
