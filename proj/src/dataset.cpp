#include "spmvsel/dataset.hpp"

#include <algorithm>

#include <fmt/core.h>

#include "spmvsel/error.hpp"

namespace spmvsel {

void Dataset::validate() const {
  if (samples.empty()) throw InvalidArgument("dataset has no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].features.size() != feature_names.size()) {
      throw InvalidArgument(fmt::format("sample {} has {} features, expected {}", i,
                                        samples[i].features.size(), feature_names.size()));
    }
  }
}

Dataset Dataset::without(std::size_t skip) const {
  Dataset d{feature_names, {}};
  d.samples.reserve(samples.size() - 1);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i != skip) d.samples.push_back(samples[i]);
  }
  return d;
}

Dataset Dataset::select(std::span<const std::string> names) const {
  std::vector<std::size_t> columns;
  for (const std::string& name : names) {
    const auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) {
      throw InvalidArgument(fmt::format("dataset has no feature '{}'", name));
    }
    columns.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  Dataset d{{names.begin(), names.end()}, {}};
  d.samples.reserve(samples.size());
  for (const Sample& s : samples) {
    Sample projected{{}, s.label};
    for (std::size_t c : columns) projected.features.push_back(s.features[c]);
    d.samples.push_back(std::move(projected));
  }
  return d;
}

Dataset Dataset::from_features(std::span<const FeatureVector> features,
                               std::span<const MatrixClass> labels,
                               std::vector<std::string> names) {
  if (features.size() != labels.size()) {
    throw DimensionError("feature and label counts differ");
  }
  Dataset d{std::move(names), {}};
  for (std::size_t i = 0; i < features.size(); ++i) {
    d.samples.push_back({select_features(features[i], d.feature_names), labels[i]});
  }
  return d;
}

}  // namespace spmvsel
