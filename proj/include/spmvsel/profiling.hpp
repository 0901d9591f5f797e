#ifndef SPMVSEL_PROFILING_HPP
#define SPMVSEL_PROFILING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/matrix_class.hpp"
#include "spmvsel/timer.hpp"

namespace spmvsel {

/// Minimum score each benchmark needs before its class is accepted.
/// noxmiss removes all irregularity, so its bound is naive and its threshold
/// is the strictest.
struct ThresholdConfig {
  double cml = 1.4;
  double mb = 1.15;
  double imb = 1.15;

  /// Throws InvalidArgument unless every threshold is > 1.
  void validate() const;
};

/// Median timings of the baseline and the three micro-benchmarks, and the
/// derived scores (speedups over baseline; inverse for inflate).
struct BenchmarkReport {
  double t_baseline = 0.0;
  double t_noxmiss = 0.0;
  double t_inflate = 0.0;
  double t_balance_mean = 0.0;
  double s_cml = 0.0;
  double s_mb = 0.0;
  double s_imb = 0.0;

  /// Computes the scores; throws Error if any time is not positive.
  static BenchmarkReport from_times(double baseline, double noxmiss, double inflate,
                                    double balance_mean);
};

struct MeasureOptions {
  std::size_t workers = 1;
  std::size_t reps = 20;
  std::size_t warmup = 5;
};

/// Median of a non-empty sample (mean of the two middle values for even sizes).
double median(std::vector<double> values);

/// Runs baseline, noxmiss, inflate and balance, each `warmup` times untimed
/// and `reps` times timed, over a nonzero-balanced partition with one part per
/// worker. Balance contributes the per-repetition mean over workers.
BenchmarkReport measure(const CsrMatrix& a, std::span<const double> x,
                        const MeasureOptions& opts, Timer& timer);

/// Walks the scores from highest to lowest (ties: MB, IMB, CML) and returns
/// the first class whose score reaches its own threshold; CMP otherwise.
MatrixClass classify_from_report(const BenchmarkReport& r, const ThresholdConfig& th);

struct ProfilingConfig {
  MeasureOptions measure;
  ThresholdConfig thresholds;
};

struct ProfilingResult {
  MatrixClass matrix_class = MatrixClass::kCMP;
  BenchmarkReport report;
};

/// measure() with x = ones, followed by classify_from_report().
ProfilingResult classify_profiling(const CsrMatrix& a, const ProfilingConfig& cfg, Timer& timer);

}  // namespace spmvsel

#endif  // SPMVSEL_PROFILING_HPP
