#include "prefsim/core.hpp"

#include <cmath>

namespace prefsim {

std::string to_string(FeatureKind kind) {
  return kind == FeatureKind::Binary ? "binary" : "integer";
}

FeatureKind parse_feature_kind(const std::string& name) {
  if (name == "binary") return FeatureKind::Binary;
  if (name == "integer") return FeatureKind::IntegerRange;
  throw ConfigError("unknown feature kind '" + name + "' (expected 'integer' or 'binary')");
}

FeatureSpace FeatureSpace::integer_range(int d, int lo, int hi) {
  FeatureSpace s{d, FeatureKind::IntegerRange, lo, hi};
  s.validate();
  return s;
}

FeatureSpace FeatureSpace::binary(int d) {
  FeatureSpace s{d, FeatureKind::Binary, 0, 1};
  s.validate();
  return s;
}

void FeatureSpace::validate() const {
  if (d < 1) throw PreconditionError("feature space needs d >= 1");
  if (lo >= hi) throw PreconditionError("feature range needs lo < hi");
  if (kind == FeatureKind::Binary && (lo != 0 || hi != 1))
    throw PreconditionError("binary feature space must have range {0, 1}");
}

bool FeatureSpace::contains(const Vector& values) const {
  if (values.size() != d) return false;
  for (double v : values) {
    if (v < lo || v > hi || v != std::floor(v)) return false;
  }
  return true;
}

Vector feature_diff(const Comparison& c) {
  if (c.left.size() != c.right.size())
    throw StructuralError("comparison cases have different lengths");
  return c.left.values - c.right.values;
}

Case sample_case(const FeatureSpace& space, RandomSource& rng) {
  Case c{Vector(space.d)};
  for (int i = 0; i < space.d; ++i) c.values[i] = rng.uniform_int(space.lo, space.hi);
  return c;
}

std::vector<Comparison> sample_candidate_pool(const FeatureSpace& space, std::size_t m,
                                              RandomSource& rng) {
  if (m < 1) throw PreconditionError("candidate pool size must be >= 1");
  space.validate();
  std::vector<Comparison> pool;
  pool.reserve(m);
  const std::size_t max_attempts = 100 * m;
  std::size_t attempts = 0;
  while (pool.size() < m) {
    if (attempts++ >= max_attempts)
      throw DegenerateSpaceError("could not draw " + std::to_string(m) +
                                 " distinct-case comparisons within " +
                                 std::to_string(max_attempts) + " attempts");
    Comparison c{sample_case(space, rng), sample_case(space, rng)};
    if (c.left == c.right) continue;
    pool.push_back(std::move(c));
  }
  return pool;
}

TrainingSet make_training_set(std::span<const LabeledComparison> history) {
  TrainingSet out;
  if (history.empty()) return out;
  const Eigen::Index d = history.front().comparison.left.size();
  out.z.resize(static_cast<Eigen::Index>(history.size()), d);
  out.y.resize(static_cast<Eigen::Index>(history.size()));
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& lc = history[i];
    if (lc.comparison.left.size() != d || lc.comparison.right.size() != d)
      throw StructuralError("history mixes feature dimensions");
    const Vector z = feature_diff(lc.comparison);
    if (!z.allFinite()) throw NumericError("non-finite feature value in history");
    const auto row = static_cast<Eigen::Index>(i);
    out.z.row(row) = z.transpose();
    out.y[row] = lc.response == 1 ? 1.0 : -1.0;
  }
  return out;
}

}  // namespace prefsim
