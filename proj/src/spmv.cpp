#include "spmvsel/spmv.hpp"

#include <atomic>

#include <fmt/core.h>

#include "spmvsel/error.hpp"

namespace spmvsel {
namespace {

std::atomic<std::uint64_t> g_kernel_invocations{0};

}  // namespace

std::uint64_t kernel_invocations() {
  return g_kernel_invocations.load(std::memory_order_relaxed);
}

namespace detail {

void count_kernel_invocation() { g_kernel_invocations.fetch_add(1, std::memory_order_relaxed); }

void check_spmv_shapes(std::size_t nrows, std::size_t ncols, std::size_t x_len,
                       std::size_t y_len, const RowPartition& part) {
  if (x_len != ncols) {
    throw DimensionError(fmt::format("x has {} entries, matrix has {} columns", x_len, ncols));
  }
  if (y_len != nrows) {
    throw DimensionError(fmt::format("y has {} entries, matrix has {} rows", y_len, nrows));
  }
  if (part.nrows() != nrows) {
    throw DimensionError(
        fmt::format("partition covers {} rows, matrix has {}", part.nrows(), nrows));
  }
}

}  // namespace detail

void spmv_baseline(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, WorkerPool& pool) {
  detail::check_spmv_shapes(a.nrows(), a.ncols(), x.size(), y.size(), part);
  detail::count_kernel_invocation();
  detail::csr_spmv(a.rowptr(), a.colind(), a.values(), x, y, part, pool);
}

std::vector<double> spmv_baseline(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool) {
  std::vector<double> y(a.nrows());
  spmv_baseline(a, x, y, part, pool);
  return y;
}

std::vector<double> spmv_baseline(const CsrMatrix& a, std::span<const double> x) {
  return spmv_baseline(a, x, RowPartition::whole(a.nrows()));
}

}  // namespace spmvsel
