#ifndef SPMVSEL_STATS_HPP
#define SPMVSEL_STATS_HPP

#include <iosfwd>
#include <span>

namespace spmvsel {

/// Box-plot summary of per-matrix speedups.
struct SpeedupStats {
  double min = 0.0;
  double q1 = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;

  bool operator==(const SpeedupStats&) const = default;
};

/// Quantile of sorted data by linear interpolation between closest ranks
/// (position q * (n - 1)).
double quantile_sorted(std::span<const double> sorted, double q);

/// Throws InvalidArgument on empty input.
SpeedupStats speedup_stats(std::span<const double> values);

}  // namespace spmvsel

#endif  // SPMVSEL_STATS_HPP
