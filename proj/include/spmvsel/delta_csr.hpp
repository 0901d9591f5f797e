#ifndef SPMVSEL_DELTA_CSR_HPP
#define SPMVSEL_DELTA_CSR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/partition.hpp"
#include "spmvsel/worker_pool.hpp"

namespace spmvsel {

enum class DeltaWidth { k8, k16 };

/// CSR with column indices delta-coded in one matrix-wide narrow width.
///
/// A delta-coded row stores its first column followed by the gaps between
/// consecutive columns, all in the narrow width and aligned with `values`.
/// Rows whose first column or any gap does not fit are stored with absolute
/// 32-bit indices and have their bit cleared in the row bitmask.
class DeltaCsrMatrix {
 public:
  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t nnz() const { return values_.size(); }
  DeltaWidth delta_width() const { return width_; }

  std::span<const std::uint32_t> rowptr() const { return rowptr_; }
  std::span<const double> values() const { return values_; }

  bool is_delta_row(std::size_t i) const { return (row_bits_[i / 8] >> (i % 8)) & 1u; }
  std::size_t delta_row_count() const;

  /// Absolute first column of a non-empty delta-coded row.
  std::uint32_t first_col(std::size_t i) const;
  /// In-row gaps of a delta-coded row (nnz_i - 1 entries).
  std::vector<std::uint32_t> gaps(std::size_t i) const;

  /// Bytes spent on column/row indexing: rowptr, narrow codes, row bitmask
  /// and the absolute fallback rows.
  std::size_t index_storage_bytes() const;

  /// Bytes spent on column indices only (everything above except rowptr).
  std::size_t column_index_bytes() const;

  CsrMatrix decode() const;

  friend DeltaCsrMatrix encode_delta(const CsrMatrix& a);
  friend void spmv_delta(const DeltaCsrMatrix& d, std::span<const double> x,
                         std::span<double> y, const RowPartition& part, WorkerPool& pool);

 private:
  struct AbsoluteRow {
    std::size_t row;
    std::size_t offset;  // into abs_colind_
  };

  template <typename Code>
  const std::vector<Code>& codes() const;
  template <typename Code>
  void rows_kernel(const double* x, double* y, std::size_t begin, std::size_t end) const;
  std::uint32_t code_at(std::size_t k) const;

  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  DeltaWidth width_ = DeltaWidth::k8;
  std::vector<std::uint32_t> rowptr_;
  std::vector<double> values_;
  std::vector<std::uint8_t> row_bits_;
  std::vector<std::uint8_t> codes8_;
  std::vector<std::uint16_t> codes16_;
  std::vector<std::uint32_t> abs_colind_;
  std::vector<AbsoluteRow> abs_rows_;  // sorted by row
};

/// Fraction of rows that must be codable in 8 bits to select the 8-bit width.
inline constexpr double kDeltaWidthThreshold = 0.9;

/// True if row i's first column and every in-row gap are <= max_code.
/// Empty rows are trivially codable.
bool row_fits_delta(const CsrMatrix& a, std::size_t i, std::uint32_t max_code);

/// 8-bit if at least 90% of rows fit in 8 bits, otherwise 16-bit; rows that
/// do not fit the chosen width fall back to absolute indices. Lossless.
DeltaCsrMatrix encode_delta(const CsrMatrix& a);

/// Same numerical contract as spmv_baseline, bitwise.
void spmv_delta(const DeltaCsrMatrix& d, std::span<const double> x, std::span<double> y,
                const RowPartition& part, WorkerPool& pool = default_pool());

std::vector<double> spmv_delta(const DeltaCsrMatrix& d, std::span<const double> x,
                               const RowPartition& part, WorkerPool& pool = default_pool());

}  // namespace spmvsel

#endif  // SPMVSEL_DELTA_CSR_HPP
