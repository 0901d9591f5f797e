#ifndef SPMVSEL_VALIDATION_HPP
#define SPMVSEL_VALIDATION_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spmvsel/dataset.hpp"
#include "spmvsel/matrix_class.hpp"
#include "spmvsel/model.hpp"

namespace spmvsel {

using Predictor = std::function<MatrixClass(std::span<const double>)>;
using Trainer = std::function<Predictor(const Dataset&)>;

/// confusion[actual][predicted]
using ConfusionMatrix = std::array<std::array<std::size_t, kNumClasses>, kNumClasses>;

struct LooResult {
  double accuracy = 0.0;
  std::vector<MatrixClass> predictions;  // prediction for sample i, trained without it
  ConfusionMatrix confusion{};
};

/// Leave-One-Out: sample i is predicted by a model trained on the other n-1.
/// Requires at least two samples.
LooResult loo_cv(const Dataset& d, const Trainer& trainer);

Trainer model_trainer(ModelKind kind, const TrainOptions& opts = {});

struct SubsetScore {
  std::vector<std::string> subset;
  double accuracy = 0.0;
};

/// LOO accuracy of `trainer` for each listed feature subset of `d`.
std::vector<SubsetScore> evaluate_subsets(const Dataset& d,
                                          std::span<const std::vector<std::string>> subsets,
                                          const Trainer& trainer);

}  // namespace spmvsel

#endif  // SPMVSEL_VALIDATION_HPP
