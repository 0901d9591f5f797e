#ifndef SPMVSEL_MODEL_HPP
#define SPMVSEL_MODEL_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spmvsel/dataset.hpp"
#include "spmvsel/decision_tree.hpp"
#include "spmvsel/features.hpp"
#include "spmvsel/naive_bayes.hpp"

namespace spmvsel {

inline constexpr int kModelFormatVersion = 1;

enum class ModelKind { kTree, kNaiveBayes };

std::string_view model_kind_name(ModelKind k);
/// Accepts "tree" and "nb"; throws InvalidArgument otherwise.
ModelKind parse_model_kind(std::string_view name);

/// A trained classifier together with the feature subset it consumes.
struct TrainedModel {
  int format_version = kModelFormatVersion;
  std::vector<std::string> feature_names;
  std::variant<DecisionTree, GaussianNB> parameters;

  ModelKind kind() const {
    return std::holds_alternative<DecisionTree>(parameters) ? ModelKind::kTree
                                                            : ModelKind::kNaiveBayes;
  }

  /// x must already be projected onto feature_names.
  MatrixClass predict(std::span<const double> x) const;
  MatrixClass predict(const FeatureVector& fv) const;

  bool operator==(const TrainedModel&) const = default;
};

struct TrainOptions {
  CartOptions cart;
  double gnb_epsilon = kDefaultVarianceSmoothing;
};

TrainedModel train_model(const Dataset& d, ModelKind kind, const TrainOptions& opts = {});

/// JSON document {format_version, kind, feature_names, parameters}; doubles
/// are written with round-trip precision.
void save_model(const TrainedModel& m, std::ostream& out);
void save_model(const TrainedModel& m, const std::filesystem::path& path);

/// Throws ModelError on malformed content or an unsupported format_version.
TrainedModel load_model(std::istream& in);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace spmvsel

#endif  // SPMVSEL_MODEL_HPP
