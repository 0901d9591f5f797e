#include "spmvsel/profiling.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include <fmt/core.h>

#include "spmvsel/error.hpp"
#include "spmvsel/kernels.hpp"
#include "spmvsel/partition.hpp"

namespace spmvsel {

void ThresholdConfig::validate() const {
  if (!(cml > 1.0) || !(mb > 1.0) || !(imb > 1.0)) {
    throw InvalidArgument(
        fmt::format("thresholds must exceed 1.0 (cml={}, mb={}, imb={})", cml, mb, imb));
  }
}

BenchmarkReport BenchmarkReport::from_times(double baseline, double noxmiss, double inflate,
                                            double balance_mean) {
  if (!(baseline > 0.0) || !(noxmiss > 0.0) || !(inflate > 0.0) || !(balance_mean > 0.0)) {
    throw Error("timer failure: benchmark durations must be positive");
  }
  BenchmarkReport r;
  r.t_baseline = baseline;
  r.t_noxmiss = noxmiss;
  r.t_inflate = inflate;
  r.t_balance_mean = balance_mean;
  r.s_cml = baseline / noxmiss;
  r.s_mb = inflate / baseline;
  r.s_imb = baseline / balance_mean;
  return r;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

BenchmarkReport measure(const CsrMatrix& a, std::span<const double> x,
                        const MeasureOptions& opts, Timer& timer) {
  if (opts.reps == 0) throw InvalidArgument("reps must be at least 1");
  if (opts.workers == 0) throw InvalidArgument("workers must be at least 1");
  if (x.size() != a.ncols()) {
    throw DimensionError(fmt::format("x has {} entries, matrix has {} columns", x.size(),
                                     a.ncols()));
  }

  WorkerPool pool(opts.workers);
  const RowPartition part = partition_rows_by_nnz(a, opts.workers);
  const NoXMissBench noxmiss(a);
  const InflateBench inflate(a);
  std::vector<double> y(a.nrows());

  auto time_kernel = [&](KernelId id, const std::function<void()>& body) {
    for (std::size_t w = 0; w < opts.warmup; ++w) body();
    std::vector<double> samples(opts.reps);
    for (double& s : samples) s = timer.time(id, body);
    return median(std::move(samples));
  };

  const double t_baseline =
      time_kernel(KernelId::kBaseline, [&] { spmv_baseline(a, x, y, part, pool); });
  const double t_noxmiss =
      time_kernel(KernelId::kNoXMiss, [&] { noxmiss.run(x, y, part, pool); });
  const double t_inflate =
      time_kernel(KernelId::kInflate, [&] { inflate.run(x, y, part, pool); });

  for (std::size_t w = 0; w < opts.warmup; ++w) spmv_baseline(a, x, y, part, pool);
  std::vector<double> worker_seconds(part.parts());
  std::vector<double> means(opts.reps);
  for (double& m : means) {
    bench_balance(a, x, y, part, timer, worker_seconds, pool);
    m = std::accumulate(worker_seconds.begin(), worker_seconds.end(), 0.0) /
        static_cast<double>(worker_seconds.size());
  }
  const double t_balance = median(std::move(means));

  return BenchmarkReport::from_times(t_baseline, t_noxmiss, t_inflate, t_balance);
}

MatrixClass classify_from_report(const BenchmarkReport& r, const ThresholdConfig& th) {
  struct Candidate {
    double score;
    double threshold;
    MatrixClass cls;
  };
  // Listed in tie-break order; stable_sort keeps it for equal scores.
  std::array<Candidate, 3> candidates = {{
      {r.s_mb, th.mb, MatrixClass::kMB},
      {r.s_imb, th.imb, MatrixClass::kIMB},
      {r.s_cml, th.cml, MatrixClass::kCML},
  }};
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  for (const Candidate& c : candidates) {
    if (c.score >= c.threshold) return c.cls;
  }
  return MatrixClass::kCMP;
}

ProfilingResult classify_profiling(const CsrMatrix& a, const ProfilingConfig& cfg,
                                   Timer& timer) {
  cfg.thresholds.validate();
  const std::vector<double> x(a.ncols(), 1.0);
  ProfilingResult result;
  result.report = measure(a, x, cfg.measure, timer);
  result.matrix_class = classify_from_report(result.report, cfg.thresholds);
  return result;
}

}  // namespace spmvsel
