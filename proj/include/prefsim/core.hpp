#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prefsim/errors.hpp"
#include "prefsim/random.hpp"

namespace prefsim {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class FeatureKind { IntegerRange, Binary };

std::string to_string(FeatureKind kind);
FeatureKind parse_feature_kind(const std::string& name);

/// The query domain: d features, each taking values in {lo, ..., hi}.
/// A binary space is the integer range {0, 1}.
struct FeatureSpace {
  int d = 1;
  FeatureKind kind = FeatureKind::IntegerRange;
  int lo = 1;
  int hi = 10;

  static FeatureSpace integer_range(int d, int lo = 1, int hi = 10);
  static FeatureSpace binary(int d);

  /// Throws PreconditionError when d < 1 or lo >= hi.
  void validate() const;
  int value_count() const { return hi - lo + 1; }
  bool contains(const Vector& values) const;
};

/// One presented case. Values are stored as reals even on integer spaces.
struct Case {
  Vector values;

  Eigen::Index size() const { return values.size(); }
  friend bool operator==(const Case& a, const Case& b) {
    return a.values.size() == b.values.size() && a.values == b.values;
  }
};

/// A pairwise query (left, right). Response 1 means "left preferred".
struct Comparison {
  Case left;
  Case right;
};

struct LabeledComparison {
  Comparison comparison;
  int response = 0;  // {0, 1}
  int timestep = 1;
};

/// Componentwise left - right. Throws StructuralError on length mismatch.
Vector feature_diff(const Comparison& c);

Case sample_case(const FeatureSpace& space, RandomSource& rng);

/// m comparisons with non-zero feature difference, in generation order.
/// Identical pairs are rejected; after 100*m attempts the space is treated as
/// degenerate and DegenerateSpaceError is thrown.
std::vector<Comparison> sample_candidate_pool(const FeatureSpace& space, std::size_t m,
                                              RandomSource& rng);

/// Feature differences stacked as rows, with labels mapped r -> 2r - 1.
struct TrainingSet {
  Matrix z;  // n x d
  Vector y;  // n, entries in {-1, +1}
};

/// Throws StructuralError when comparisons disagree on dimension and
/// NumericError on non-finite feature values.
TrainingSet make_training_set(std::span<const LabeledComparison> history);

}  // namespace prefsim
