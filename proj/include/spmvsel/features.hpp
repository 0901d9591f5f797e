#ifndef SPMVSEL_FEATURES_HPP
#define SPMVSEL_FEATURES_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spmvsel/csr_matrix.hpp"

namespace spmvsel {

/// Cache geometry used by the `size` and `miss_ratio` features.
struct CacheConfig {
  std::size_t llc_bytes = std::size_t{32} << 20;
  std::size_t cacheline_bytes = 64;
  std::size_t value_bytes = 8;
  std::size_t index_bytes = 4;

  /// Throws InvalidArgument unless all fields are positive and a cache line
  /// holds a whole number of values.
  void validate() const;

  /// Cache line size in value elements.
  std::size_t line_elements() const { return cacheline_bytes / value_bytes; }
};

/// The fourteen structural features, in canonical order.
struct FeatureVector {
  double size = 0.0;
  double density = 0.0;
  double nnz_min = 0.0;
  double nnz_max = 0.0;
  double nnz_avg = 0.0;
  double nnz_sd = 0.0;
  double bw_min = 0.0;
  double bw_max = 0.0;
  double bw_avg = 0.0;
  double bw_sd = 0.0;
  double dispersion_avg = 0.0;
  double dispersion_sd = 0.0;
  double clustering = 0.0;
  double miss_ratio = 0.0;

  static constexpr std::size_t kCount = 14;

  std::array<double, kCount> as_array() const;
  static FeatureVector from_array(std::span<const double> v);

  bool operator==(const FeatureVector&) const = default;
};

/// Feature names in canonical (CSV column) order.
const std::array<std::string_view, FeatureVector::kCount>& feature_names();

/// Index of a feature name, or throws InvalidArgument.
std::size_t feature_index(std::string_view name);

/// Optional instrumentation for extract_features: how many rowptr entries and
/// colind entries were visited.
struct ExtractionCounters {
  std::uint64_t row_visits = 0;
  std::uint64_t element_visits = 0;
};

/// Bytes touched by one SpMV: values, colind, rowptr, x and y.
std::size_t working_set_bytes(const CsrMatrix& a, const CacheConfig& cfg);

/// Single pass over rowptr plus a single pass over colind.
///
/// Per row i: nnz_i, bw_i = last col - first col (0 when nnz_i <= 1),
/// disp_i = nnz_i / (bw_i + 1), clust_i = groups of unit-stride columns / nnz_i,
/// misses_i = elements whose gap to the previous element exceeds one cache
/// line (in value elements). Empty rows contribute zeros but still count in
/// every average. Standard deviations are population deviations.
FeatureVector extract_features(const CsrMatrix& a, const CacheConfig& cfg,
                               ExtractionCounters* counters = nullptr);

/// Values of `names`, in the requested order.
std::vector<double> select_features(const FeatureVector& fv,
                                    std::span<const std::string> names);

/// Named feature subsets. "all" lists every feature; the platform presets are
/// the subsets reported for a many-core coprocessor (xeon-phi-*) and a
/// multi-socket multicore (sandy-bridge-*).
std::vector<std::string> feature_subset_preset(std::string_view name);
std::vector<std::string> feature_subset_preset_names();

/// CSV header `name,size,density,...` (leading key column optional).
void write_feature_csv_header(std::ostream& out, std::string_view key_column = {});
void write_feature_csv_row(std::ostream& out, const FeatureVector& fv,
                           std::string_view key = {});

}  // namespace spmvsel

#endif  // SPMVSEL_FEATURES_HPP
