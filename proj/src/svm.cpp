#include "prefsim/svm.hpp"

#include <algorithm>
#include <cmath>

namespace prefsim {

Hypothesis fit_svm(std::span<const LabeledComparison> history, const SvmOptions& options) {
  if (history.empty()) {
    return Hypothesis{Vector()};
  }
  return fit_svm(make_training_set(history), options);
}

Hypothesis fit_svm(const TrainingSet& data, const SvmOptions& options) {
  const Eigen::Index n = data.z.rows();
  const Eigen::Index d = data.z.cols();
  Vector w = Vector::Zero(d);
  if (n == 0) return Hypothesis{w};
  if (!data.z.allFinite() || !data.y.allFinite()) throw NumericError("non-finite SVM training data");

  const double cost = options.cost;
  Vector alpha = Vector::Zero(n);
  const Vector q_diag = data.z.rowwise().squaredNorm();

  for (int pass = 0; pass < options.max_passes; ++pass) {
    double violation = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (q_diag[i] <= 0.0) continue;
      const double g = data.y[i] * w.dot(data.z.row(i)) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= cost) {
        pg = std::max(g, 0.0);
      }
      violation = std::max(violation, std::abs(pg));
      if (pg != 0.0) {
        const double old = alpha[i];
        alpha[i] = std::clamp(old - g / q_diag[i], 0.0, cost);
        w += ((alpha[i] - old) * data.y[i]) * data.z.row(i).transpose();
      }
    }
    if (violation <= options.tolerance) break;
  }
  return Hypothesis{w};
}

int predict(const Hypothesis& h, const Comparison& c) {
  return predict(h, feature_diff(c));
}

double svm_objective(const Vector& w, const TrainingSet& data, double cost) {
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < data.z.rows(); ++i)
    hinge += std::max(0.0, 1.0 - data.y[i] * w.dot(data.z.row(i)));
  return 0.5 * w.squaredNorm() + cost * hinge;
}

double training_accuracy(const Vector& w, const TrainingSet& data) {
  if (data.z.rows() == 0) return 1.0;
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < data.z.rows(); ++i)
    if (data.y[i] * w.dot(data.z.row(i)) > 0.0) ++correct;
  return static_cast<double>(correct) / static_cast<double>(data.z.rows());
}

}  // namespace prefsim
