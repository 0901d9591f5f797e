#include "spmvsel/kernels.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

#include "spmvsel/error.hpp"

namespace spmvsel {
namespace {

inline void prefetch_read(const void* addr) {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_prefetch(addr, 0, 3);
#else
  (void)addr;
#endif
}

void prefetch_rows(const CsrMatrix& a, const double* x, double* y, std::size_t begin,
                   std::size_t end, std::size_t distance) {
  const std::uint32_t* rowptr = a.rowptr().data();
  const std::uint32_t* colind = a.colind().data();
  const double* values = a.values().data();
  for (std::size_t i = begin; i < end; ++i) {
    const std::uint32_t first = rowptr[i], last = rowptr[i + 1];
    double sum = 0.0;
    for (std::uint32_t j = first; j < last; ++j) {
      const std::size_t ahead = std::min<std::size_t>(j + distance, last - 1);
      prefetch_read(&x[colind[ahead]]);
      sum += values[j] * x[colind[j]];
    }
    y[i] = sum;
  }
}

void unrolled_rows(const CsrMatrix& a, const double* x, double* y, std::size_t begin,
                   std::size_t end) {
  const std::uint32_t* rowptr = a.rowptr().data();
  const std::uint32_t* colind = a.colind().data();
  const double* values = a.values().data();
  for (std::size_t i = begin; i < end; ++i) {
    std::uint32_t j = rowptr[i];
    const std::uint32_t last = rowptr[i + 1];
    double sum = 0.0;
    if (last - j >= 4) {
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      for (; j + 4 <= last; j += 4) {
        s0 += values[j] * x[colind[j]];
        s1 += values[j + 1] * x[colind[j + 1]];
        s2 += values[j + 2] * x[colind[j + 2]];
        s3 += values[j + 3] * x[colind[j + 3]];
      }
      sum = (s0 + s1) + (s2 + s3);
    }
    for (; j < last; ++j) sum += values[j] * x[colind[j]];
    y[i] = sum;
  }
}

}  // namespace

std::size_t default_prefetch_distance(std::size_t cacheline_bytes) {
  return std::max<std::size_t>(1, cacheline_bytes / sizeof(double));
}

void spmv_prefetch(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, std::size_t distance, WorkerPool& pool) {
  if (distance == 0) throw InvalidArgument("prefetch distance must be at least 1");
  detail::check_spmv_shapes(a.nrows(), a.ncols(), x.size(), y.size(), part);
  detail::count_kernel_invocation();
  pool.for_each_task(part.parts(), [&](std::size_t p) {
    prefetch_rows(a, x.data(), y.data(), part.begin(p), part.end(p), distance);
  });
}

std::vector<double> spmv_prefetch(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, std::size_t distance,
                                  WorkerPool& pool) {
  std::vector<double> y(a.nrows());
  spmv_prefetch(a, x, y, part, distance, pool);
  return y;
}

void SchedulePolicy::validate() const {
  if (chunk_rows == 0) throw InvalidArgument("schedule chunk must be at least 1 row");
}

void spmv_scheduled(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                    const SchedulePolicy& policy, WorkerPool& pool) {
  policy.validate();
  if (policy.kind == SchedulePolicy::Kind::kStaticNnz) {
    spmv_baseline(a, x, y, partition_rows_by_nnz(a, pool.size()), pool);
    return;
  }
  detail::check_spmv_shapes(a.nrows(), a.ncols(), x.size(), y.size(),
                            RowPartition::whole(a.nrows()));
  detail::count_kernel_invocation();
  pool.for_each_chunk(a.nrows(), policy.chunk_rows, [&](std::size_t begin, std::size_t end) {
    detail::csr_rows(a.rowptr().data(), a.colind().data(), a.values().data(), x.data(),
                     y.data(), begin, end);
  });
}

std::vector<double> spmv_scheduled(const CsrMatrix& a, std::span<const double> x,
                                   const SchedulePolicy& policy, WorkerPool& pool) {
  std::vector<double> y(a.nrows());
  spmv_scheduled(a, x, y, policy, pool);
  return y;
}

void spmv_unrolled(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, WorkerPool& pool) {
  detail::check_spmv_shapes(a.nrows(), a.ncols(), x.size(), y.size(), part);
  detail::count_kernel_invocation();
  pool.for_each_task(part.parts(), [&](std::size_t p) {
    unrolled_rows(a, x.data(), y.data(), part.begin(p), part.end(p));
  });
}

std::vector<double> spmv_unrolled(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool) {
  std::vector<double> y(a.nrows());
  spmv_unrolled(a, x, y, part, pool);
  return y;
}

NoXMissBench::NoXMissBench(const CsrMatrix& a) : a_(&a), zero_colind_(a.nnz(), 0) {
  if (a.ncols() == 0) throw InvalidArgument("noxmiss needs at least one column");
}

void NoXMissBench::run(std::span<const double> x, std::span<double> y,
                       const RowPartition& part, WorkerPool& pool) const {
  detail::check_spmv_shapes(a_->nrows(), a_->ncols(), x.size(), y.size(), part);
  detail::count_kernel_invocation();
  detail::csr_spmv<std::uint32_t>(a_->rowptr(), zero_colind_, a_->values(), x, y, part, pool);
}

std::vector<double> bench_noxmiss(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool) {
  std::vector<double> y(a.nrows());
  NoXMissBench(a).run(x, y, part, pool);
  return y;
}

void InflateBench::run(std::span<const double> x, std::span<double> y,
                       const RowPartition& part, WorkerPool& pool) const {
  detail::check_spmv_shapes(wide_.nrows(), wide_.ncols(), x.size(), y.size(), part);
  detail::count_kernel_invocation();
  detail::csr_spmv(wide_.rowptr(), wide_.colind(), wide_.values(), x, y, part, pool);
}

std::vector<double> bench_inflate(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool) {
  std::vector<double> y(a.nrows());
  InflateBench(a).run(x, y, part, pool);
  return y;
}

void bench_balance(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, Timer& timer, std::span<double> worker_seconds,
                   WorkerPool& pool) {
  detail::check_spmv_shapes(a.nrows(), a.ncols(), x.size(), y.size(), part);
  if (worker_seconds.size() != part.parts()) {
    throw DimensionError("need one duration slot per partition");
  }
  detail::count_kernel_invocation();
  pool.for_each_task(part.parts(), [&](std::size_t p) {
    worker_seconds[p] = timer.time_worker(p, [&] {
      detail::csr_rows(a.rowptr().data(), a.colind().data(), a.values().data(), x.data(),
                       y.data(), part.begin(p), part.end(p));
    });
  });
}

BalanceResult bench_balance(const CsrMatrix& a, std::span<const double> x,
                            const RowPartition& part, Timer& timer, WorkerPool& pool) {
  BalanceResult r;
  r.y.resize(a.nrows());
  r.worker_seconds.resize(part.parts());
  bench_balance(a, x, r.y, part, timer, r.worker_seconds, pool);
  r.mean_seconds = std::accumulate(r.worker_seconds.begin(), r.worker_seconds.end(), 0.0) /
                   static_cast<double>(r.worker_seconds.size());
  return r;
}

}  // namespace spmvsel
