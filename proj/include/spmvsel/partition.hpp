#ifndef SPMVSEL_PARTITION_HPP
#define SPMVSEL_PARTITION_HPP

#include <cstddef>
#include <vector>

#include "spmvsel/csr_matrix.hpp"

namespace spmvsel {

/// Contiguous, disjoint row ranges: partition p owns rows
/// [boundaries[p], boundaries[p+1]).
class RowPartition {
 public:
  /// Validates boundaries[0] == 0, non-decreasing, at least two entries.
  explicit RowPartition(std::vector<std::size_t> boundaries);

  /// A single partition spanning all rows.
  static RowPartition whole(std::size_t nrows) { return RowPartition({0, nrows}); }

  std::size_t parts() const { return boundaries_.size() - 1; }
  std::size_t nrows() const { return boundaries_.back(); }
  std::size_t begin(std::size_t p) const { return boundaries_[p]; }
  std::size_t end(std::size_t p) const { return boundaries_[p + 1]; }
  const std::vector<std::size_t>& boundaries() const { return boundaries_; }

  bool operator==(const RowPartition&) const = default;

 private:
  std::vector<std::size_t> boundaries_;
};

/// Boundary k is the smallest row r with rowptr[r] >= k*NNZ/p, clamped so
/// boundaries stay monotone. p > N leaves trailing partitions empty.
RowPartition partition_rows_by_nnz(const CsrMatrix& a, std::size_t p);

}  // namespace spmvsel

#endif  // SPMVSEL_PARTITION_HPP
