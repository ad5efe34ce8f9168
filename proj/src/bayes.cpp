#include "prefsim/bayes.hpp"

namespace prefsim {

ArdPosterior fit_ard(std::span<const LabeledComparison> history, const ArdOptions& options) {
  if (history.empty()) throw PreconditionError("fit_ard needs a non-empty history");
  const TrainingSet data = make_training_set(history);
  return fit_ard<double>(data.z, data.y, options);
}

}  // namespace prefsim
