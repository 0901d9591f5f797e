#include "spmvsel/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "spmvsel/error.hpp"

namespace spmvsel {

GaussianNB train_gnb(const Dataset& d, double epsilon) {
  d.validate();
  if (!(epsilon >= 0.0)) throw InvalidArgument("variance smoothing must be non-negative");

  const std::size_t nf = d.n_features();
  const double total = static_cast<double>(d.size());

  GaussianNB m;
  m.n_features = nf;
  std::array<std::vector<double>, kNumClasses> sums;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    sums[c].assign(nf, 0.0);
    m.means[c].assign(nf, 0.0);
    m.variances[c].assign(nf, 0.0);
  }

  std::vector<double> all_sum(nf, 0.0);
  for (const Sample& s : d.samples) {
    const std::size_t c = class_index(s.label);
    ++m.counts[c];
    for (std::size_t f = 0; f < nf; ++f) {
      sums[c][f] += s.features[f];
      all_sum[f] += s.features[f];
    }
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    m.priors[c] = static_cast<double>(m.counts[c]) / total;
    if (m.counts[c] == 0) continue;
    for (std::size_t f = 0; f < nf; ++f) {
      m.means[c][f] = sums[c][f] / static_cast<double>(m.counts[c]);
    }
  }

  // Largest per-feature variance over the whole set scales the smoothing.
  double max_var = 0.0;
  for (std::size_t f = 0; f < nf; ++f) {
    const double mean = all_sum[f] / total;
    double sq = 0.0;
    for (const Sample& s : d.samples) sq += (s.features[f] - mean) * (s.features[f] - mean);
    max_var = std::max(max_var, sq / total);
  }
  m.smoothing = std::max(epsilon * max_var, kVarianceFloor);

  for (const Sample& s : d.samples) {
    const std::size_t c = class_index(s.label);
    for (std::size_t f = 0; f < nf; ++f) {
      const double dev = s.features[f] - m.means[c][f];
      m.variances[c][f] += dev * dev;
    }
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    for (std::size_t f = 0; f < nf; ++f) {
      if (m.counts[c] > 0) m.variances[c][f] /= static_cast<double>(m.counts[c]);
      m.variances[c][f] += m.smoothing;
    }
  }
  return m;
}

std::array<double, kNumClasses> gnb_log_scores(const GaussianNB& m, std::span<const double> x) {
  if (x.size() != m.n_features) {
    throw DimensionError(
        fmt::format("naive Bayes model expects {} features, got {}", m.n_features, x.size()));
  }
  std::array<double, kNumClasses> scores;
  scores.fill(-std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (m.counts[c] == 0) continue;
    double s = std::log(m.priors[c]);
    for (std::size_t f = 0; f < m.n_features; ++f) {
      const double var = m.variances[c][f];
      const double dev = x[f] - m.means[c][f];
      s += -0.5 * std::log(2.0 * std::numbers::pi * var) - dev * dev / (2.0 * var);
    }
    scores[c] = s;
  }
  return scores;
}

MatrixClass predict_gnb(const GaussianNB& m, std::span<const double> x) {
  const auto scores = gnb_log_scores(m, x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return static_cast<MatrixClass>(best);
}

}  // namespace spmvsel
