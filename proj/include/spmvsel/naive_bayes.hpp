#ifndef SPMVSEL_NAIVE_BAYES_HPP
#define SPMVSEL_NAIVE_BAYES_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "spmvsel/dataset.hpp"
#include "spmvsel/matrix_class.hpp"

namespace spmvsel {

/// Gaussian class-conditional model with empirical priors.
/// Classes absent from the training data keep count 0 and never win.
struct GaussianNB {
  std::size_t n_features = 0;
  double smoothing = 0.0;  // added to every variance
  std::array<std::size_t, kNumClasses> counts{};
  std::array<double, kNumClasses> priors{};
  std::array<std::vector<double>, kNumClasses> means;
  std::array<std::vector<double>, kNumClasses> variances;  // smoothing included

  bool operator==(const GaussianNB&) const = default;
};

inline constexpr double kDefaultVarianceSmoothing = 1e-9;
inline constexpr double kVarianceFloor = 1e-12;

/// Priors are class frequencies; means and population variances are per
/// class and feature. Every variance gets
/// max(epsilon * largest per-feature variance of the whole set, 1e-12).
GaussianNB train_gnb(const Dataset& d, double epsilon = kDefaultVarianceSmoothing);

/// log prior + sum of Gaussian log densities per class; -inf for absent classes.
std::array<double, kNumClasses> gnb_log_scores(const GaussianNB& m, std::span<const double> x);

/// Argmax of gnb_log_scores; ties go to the lower class.
MatrixClass predict_gnb(const GaussianNB& m, std::span<const double> x);

}  // namespace spmvsel

#endif  // SPMVSEL_NAIVE_BAYES_HPP
