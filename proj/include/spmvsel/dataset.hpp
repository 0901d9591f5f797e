#ifndef SPMVSEL_DATASET_HPP
#define SPMVSEL_DATASET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spmvsel/features.hpp"
#include "spmvsel/matrix_class.hpp"

namespace spmvsel {

struct Sample {
  std::vector<double> features;
  MatrixClass label = MatrixClass::kCMP;

  bool operator==(const Sample&) const = default;
};

/// Labelled feature vectors sharing one ordered list of feature names.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  std::size_t n_features() const { return feature_names.size(); }

  /// Throws InvalidArgument when empty or when a sample has the wrong width.
  void validate() const;

  /// Copy without sample `skip`.
  Dataset without(std::size_t skip) const;

  /// Projection onto `names` (each must be one of feature_names).
  Dataset select(std::span<const std::string> names) const;

  /// Builds a dataset over `names` from full feature vectors.
  static Dataset from_features(std::span<const FeatureVector> features,
                               std::span<const MatrixClass> labels,
                               std::vector<std::string> names);
};

}  // namespace spmvsel

#endif  // SPMVSEL_DATASET_HPP
