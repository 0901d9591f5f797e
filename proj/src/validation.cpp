#include "spmvsel/validation.hpp"

#include <memory>

#include "spmvsel/error.hpp"

namespace spmvsel {

LooResult loo_cv(const Dataset& d, const Trainer& trainer) {
  d.validate();
  if (d.size() < 2) throw InvalidArgument("leave-one-out needs at least two samples");

  LooResult r;
  r.predictions.reserve(d.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Predictor predict = trainer(d.without(i));
    const MatrixClass predicted = predict(d.samples[i].features);
    const MatrixClass actual = d.samples[i].label;
    r.predictions.push_back(predicted);
    ++r.confusion[class_index(actual)][class_index(predicted)];
    if (predicted == actual) ++correct;
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(d.size());
  return r;
}

Trainer model_trainer(ModelKind kind, const TrainOptions& opts) {
  return [kind, opts](const Dataset& train) -> Predictor {
    auto model = std::make_shared<const TrainedModel>(train_model(train, kind, opts));
    return [model](std::span<const double> x) { return model->predict(x); };
  };
}

std::vector<SubsetScore> evaluate_subsets(const Dataset& d,
                                          std::span<const std::vector<std::string>> subsets,
                                          const Trainer& trainer) {
  std::vector<SubsetScore> out;
  for (const auto& subset : subsets) {
    out.push_back({subset, loo_cv(d.select(subset), trainer).accuracy});
  }
  return out;
}

}  // namespace spmvsel
