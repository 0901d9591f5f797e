#ifndef SPMVSEL_KERNELS_HPP
#define SPMVSEL_KERNELS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/delta_csr.hpp"
#include "spmvsel/partition.hpp"
#include "spmvsel/spmv.hpp"
#include "spmvsel/timer.hpp"
#include "spmvsel/worker_pool.hpp"

namespace spmvsel {

// --- class-targeted variants -------------------------------------------------

/// Elements of x that fit in one cache line of doubles.
std::size_t default_prefetch_distance(std::size_t cacheline_bytes);

/// Baseline loop plus a read prefetch of x[colind[j + distance]] (clamped to
/// the last element of the row) on every inner iteration. Bitwise equal to
/// spmv_baseline.
void spmv_prefetch(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, std::size_t distance,
                   WorkerPool& pool = default_pool());
std::vector<double> spmv_prefetch(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, std::size_t distance,
                                  WorkerPool& pool = default_pool());

struct SchedulePolicy {
  enum class Kind { kStaticNnz, kDynamicChunked };

  Kind kind = Kind::kDynamicChunked;
  std::size_t chunk_rows = 1;

  static SchedulePolicy static_nnz() { return {Kind::kStaticNnz, 1}; }
  static SchedulePolicy dynamic(std::size_t chunk_rows) {
    return {Kind::kDynamicChunked, chunk_rows};
  }
  void validate() const;
};

/// static_nnz: baseline over partition_rows_by_nnz(a, pool.size()).
/// dynamic_chunked: chunks of rows claimed on demand by idle workers.
void spmv_scheduled(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                    const SchedulePolicy& policy, WorkerPool& pool = default_pool());
std::vector<double> spmv_scheduled(const CsrMatrix& a, std::span<const double> x,
                                   const SchedulePolicy& policy,
                                   WorkerPool& pool = default_pool());

/// Four independent partial sums per row, reduced as ((s0+s1)+(s2+s3)), then
/// the scalar tail. Rows shorter than four elements take the tail path only
/// and therefore match the baseline exactly.
void spmv_unrolled(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, WorkerPool& pool = default_pool());
std::vector<double> spmv_unrolled(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool = default_pool());

// --- micro-benchmarks ----------------------------------------------------------

/// Baseline kernel over a copy of the matrix whose column indices are all
/// zero: y[i] = x[0] * (row sum i). Not a valid SpMV.
class NoXMissBench {
 public:
  explicit NoXMissBench(const CsrMatrix& a);

  void run(std::span<const double> x, std::span<double> y, const RowPartition& part,
           WorkerPool& pool = default_pool()) const;

 private:
  const CsrMatrix* a_;
  std::vector<std::uint32_t> zero_colind_;
};

std::vector<double> bench_noxmiss(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool = default_pool());

/// Baseline kernel over a 64-bit-index copy of the matrix.
class InflateBench {
 public:
  explicit InflateBench(const CsrMatrix& a) : wide_(widen(a)) {}

  void run(std::span<const double> x, std::span<double> y, const RowPartition& part,
           WorkerPool& pool = default_pool()) const;

  const WideCsrMatrix& matrix() const { return wide_; }

 private:
  WideCsrMatrix wide_;
};

std::vector<double> bench_inflate(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool = default_pool());

struct BalanceResult {
  std::vector<double> worker_seconds;  // one per partition
  double mean_seconds = 0.0;
  std::vector<double> y;
};

/// Baseline SpMV where each partition is timed on its own, with no barrier
/// inside the timed region; reports every duration and their arithmetic mean.
void bench_balance(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, Timer& timer, std::span<double> worker_seconds,
                   WorkerPool& pool = default_pool());
BalanceResult bench_balance(const CsrMatrix& a, std::span<const double> x,
                            const RowPartition& part, Timer& timer,
                            WorkerPool& pool = default_pool());

}  // namespace spmvsel

#endif  // SPMVSEL_KERNELS_HPP
