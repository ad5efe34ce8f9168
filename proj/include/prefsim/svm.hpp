#pragma once

#include <span>

#include "prefsim/core.hpp"

namespace prefsim {

/// Soft-margin linear SVM without intercept:
///   minimize 0.5 * |w|^2 + cost * sum_i max(0, 1 - y_i * w'z_i)
/// solved by dual coordinate descent in fixed data order.
struct SvmOptions {
  double cost = 1.0;
  /// Stop after a pass whose largest projected dual gradient is below this.
  double tolerance = 1e-6;
  int max_passes = 100000;
};

/// Learned weights over feature differences.
struct Hypothesis {
  Vector w_hat;
};

/// Empty history gives an empty (dimensionless) zero hypothesis, which
/// predicts 0 for every comparison.
Hypothesis fit_svm(std::span<const LabeledComparison> history, const SvmOptions& options = {});
Hypothesis fit_svm(const TrainingSet& data, const SvmOptions& options = {});

/// 1 when w_hat'(left - right) > 0, else 0 (ties and w_hat = 0 give 0).
template <typename Derived>
int predict(const Hypothesis& h, const Eigen::MatrixBase<Derived>& diff) {
  if (h.w_hat.size() == 0) return 0;
  if (h.w_hat.size() != diff.size()) throw StructuralError("hypothesis/comparison dimension mismatch");
  return h.w_hat.dot(diff) > 0.0 ? 1 : 0;
}

int predict(const Hypothesis& h, const Comparison& c);

/// Primal objective of the problem fit_svm solves.
double svm_objective(const Vector& w, const TrainingSet& data, double cost);

/// Fraction of training rows with strictly positive margin y_i w'z_i.
double training_accuracy(const Vector& w, const TrainingSet& data);

}  // namespace prefsim
