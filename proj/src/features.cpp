#include "spmvsel/features.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spmvsel/error.hpp"

namespace spmvsel {
namespace {

constexpr std::array<std::string_view, FeatureVector::kCount> kNames = {
    "size",   "density", "nnz_min", "nnz_max",        "nnz_avg",       "nnz_sd",     "bw_min",
    "bw_max", "bw_avg",  "bw_sd",   "dispersion_avg", "dispersion_sd", "clustering", "miss_ratio",
};

struct MeanSd {
  double mean;
  double sd;
};

MeanSd mean_sd(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(v.size()))};
}

}  // namespace

void CacheConfig::validate() const {
  if (llc_bytes == 0 || cacheline_bytes == 0 || value_bytes == 0 || index_bytes == 0) {
    throw InvalidArgument("cache configuration values must be positive");
  }
  if (cacheline_bytes % value_bytes != 0) {
    throw InvalidArgument("cache line size must be a multiple of the value size");
  }
}

std::array<double, FeatureVector::kCount> FeatureVector::as_array() const {
  return {size,   density, nnz_min, nnz_max,        nnz_avg,       nnz_sd,     bw_min,
          bw_max, bw_avg,  bw_sd,   dispersion_avg, dispersion_sd, clustering, miss_ratio};
}

FeatureVector FeatureVector::from_array(std::span<const double> v) {
  if (v.size() != kCount) {
    throw DimensionError(fmt::format("expected {} feature values, got {}", kCount, v.size()));
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11], v[12], v[13]};
}

const std::array<std::string_view, FeatureVector::kCount>& feature_names() { return kNames; }

std::size_t feature_index(std::string_view name) {
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) throw InvalidArgument(fmt::format("unknown feature '{}'", name));
  return static_cast<std::size_t>(it - kNames.begin());
}

std::size_t working_set_bytes(const CsrMatrix& a, const CacheConfig& cfg) {
  const std::size_t n = a.nrows(), m = a.ncols(), nnz = a.nnz();
  return cfg.value_bytes * nnz + cfg.index_bytes * nnz + cfg.index_bytes * (n + 1) +
         cfg.value_bytes * (n + m);
}

FeatureVector extract_features(const CsrMatrix& a, const CacheConfig& cfg,
                               ExtractionCounters* counters) {
  cfg.validate();
  const std::size_t n = a.nrows();
  const std::size_t m = a.ncols();
  if (n == 0 || m == 0) throw InvalidArgument("feature extraction needs a non-empty shape");

  const auto rowptr = a.rowptr();
  const auto colind = a.colind();
  const std::size_t line = cfg.line_elements();

  std::vector<double> nnz(n), bw(n), disp(n);
  double clust_sum = 0.0;
  double miss_sum = 0.0;
  std::size_t nnz_min = a.nnz(), nnz_max = 0;
  std::size_t bw_min = m, bw_max = 0;
  ExtractionCounters local;

  for (std::size_t i = 0; i < n; ++i) {
    ++local.row_visits;
    const std::size_t begin = rowptr[i], end = rowptr[i + 1];
    const std::size_t count = end - begin;
    std::size_t span = 0;
    if (count > 0) {
      std::size_t groups = 1;
      std::size_t misses = 0;
      ++local.element_visits;
      for (std::size_t j = begin + 1; j < end; ++j) {
        ++local.element_visits;
        const std::size_t gap = colind[j] - colind[j - 1];
        if (gap != 1) ++groups;
        if (gap > line) ++misses;
      }
      span = colind[end - 1] - colind[begin];
      clust_sum += static_cast<double>(groups) / static_cast<double>(count);
      miss_sum += static_cast<double>(misses);
      disp[i] = static_cast<double>(count) / static_cast<double>(span + 1);
    }
    nnz[i] = static_cast<double>(count);
    bw[i] = static_cast<double>(span);
    nnz_min = std::min(nnz_min, count);
    nnz_max = std::max(nnz_max, count);
    bw_min = std::min(bw_min, span);
    bw_max = std::max(bw_max, span);
  }

  const double rows = static_cast<double>(n);
  const MeanSd nnz_stats = mean_sd(nnz);
  const MeanSd bw_stats = mean_sd(bw);
  const MeanSd disp_stats = mean_sd(disp);

  FeatureVector fv;
  fv.size = working_set_bytes(a, cfg) <= cfg.llc_bytes ? 1.0 : 0.0;
  fv.density = static_cast<double>(a.nnz()) / (rows * static_cast<double>(m));
  fv.nnz_min = static_cast<double>(nnz_min);
  fv.nnz_max = static_cast<double>(nnz_max);
  fv.nnz_avg = nnz_stats.mean;
  fv.nnz_sd = nnz_stats.sd;
  fv.bw_min = static_cast<double>(bw_min);
  fv.bw_max = static_cast<double>(bw_max);
  fv.bw_avg = bw_stats.mean;
  fv.bw_sd = bw_stats.sd;
  fv.dispersion_avg = disp_stats.mean;
  fv.dispersion_sd = disp_stats.sd;
  fv.clustering = clust_sum / rows;
  fv.miss_ratio = miss_sum / rows;

  if (counters != nullptr) *counters = local;
  return fv;
}

std::vector<double> select_features(const FeatureVector& fv,
                                    std::span<const std::string> names) {
  const auto all = fv.as_array();
  std::vector<double> out;
  out.reserve(names.size());
  for (const std::string& name : names) out.push_back(all[feature_index(name)]);
  return out;
}

std::vector<std::string> feature_subset_preset(std::string_view name) {
  if (name == "all") return {kNames.begin(), kNames.end()};
  if (name == "xeon-phi-tree") {
    return {"size",    "bw_avg", "bw_sd",      "nnz_min",      "nnz_max",
            "nnz_avg", "nnz_sd", "miss_ratio", "dispersion_sd"};
  }
  if (name == "xeon-phi-nb") {
    return {"nnz_min", "nnz_max", "nnz_sd", "bw_avg", "dispersion_avg", "dispersion_sd"};
  }
  if (name == "sandy-bridge-tree") {
    return {"size",    "bw_avg", "bw_sd",         "nnz_min",   "nnz_max",
            "nnz_avg", "nnz_sd", "dispersion_sd", "miss_ratio"};
  }
  if (name == "sandy-bridge-nb") return {"size", "nnz_min", "nnz_max"};
  throw InvalidArgument(fmt::format("unknown feature subset preset '{}'", name));
}

std::vector<std::string> feature_subset_preset_names() {
  return {"all", "xeon-phi-tree", "xeon-phi-nb", "sandy-bridge-tree", "sandy-bridge-nb"};
}

void write_feature_csv_header(std::ostream& out, std::string_view key_column) {
  if (!key_column.empty()) fmt::print(out, "{},", key_column);
  fmt::print(out, "{}\n", fmt::join(kNames, ","));
}

void write_feature_csv_row(std::ostream& out, const FeatureVector& fv, std::string_view key) {
  if (!key.empty()) fmt::print(out, "{},", key);
  fmt::print(out, "{}\n", fmt::join(fv.as_array(), ","));
}

}  // namespace spmvsel
