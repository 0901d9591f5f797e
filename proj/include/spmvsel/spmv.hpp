#ifndef SPMVSEL_SPMV_HPP
#define SPMVSEL_SPMV_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/partition.hpp"
#include "spmvsel/worker_pool.hpp"

namespace spmvsel {

/// Number of SpMV kernel executions (any variant, any benchmark) issued by
/// this process so far.
std::uint64_t kernel_invocations();

namespace detail {

void count_kernel_invocation();

/// Throws DimensionError unless x, y and the partition fit the matrix shape.
void check_spmv_shapes(std::size_t nrows, std::size_t ncols, std::size_t x_len,
                       std::size_t y_len, const RowPartition& part);

/// Reference row loop: y[i] = sum over row i of values[j] * x[colind[j]],
/// accumulated left to right from 0.0. Every bitwise-compatible variant keeps
/// this exact accumulation order.
template <typename Index>
inline void csr_rows(const Index* rowptr, const Index* colind, const double* values,
                     const double* x, double* y, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    double sum = 0.0;
    for (Index j = rowptr[i]; j < rowptr[i + 1]; ++j) {
      sum += values[j] * x[colind[j]];
    }
    y[i] = sum;
  }
}

template <typename Index>
void csr_spmv(std::span<const Index> rowptr, std::span<const Index> colind,
              std::span<const double> values, std::span<const double> x, std::span<double> y,
              const RowPartition& part, WorkerPool& pool) {
  pool.for_each_task(part.parts(), [&](std::size_t p) {
    csr_rows(rowptr.data(), colind.data(), values.data(), x.data(), y.data(), part.begin(p),
             part.end(p));
  });
}

}  // namespace detail

/// Baseline CSR SpMV; each partition writes only its own slice of y.
void spmv_baseline(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
                   const RowPartition& part, WorkerPool& pool = default_pool());

std::vector<double> spmv_baseline(const CsrMatrix& a, std::span<const double> x,
                                  const RowPartition& part, WorkerPool& pool = default_pool());

/// Single-partition convenience overload.
std::vector<double> spmv_baseline(const CsrMatrix& a, std::span<const double> x);

}  // namespace spmvsel

#endif  // SPMVSEL_SPMV_HPP
