#include "spmvsel/partition.hpp"

#include <algorithm>

#include "spmvsel/error.hpp"

namespace spmvsel {

RowPartition::RowPartition(std::vector<std::size_t> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2 || boundaries_.front() != 0) {
    throw InvalidArgument("row partition needs boundaries starting at 0 and at least one part");
  }
  if (!std::is_sorted(boundaries_.begin(), boundaries_.end())) {
    throw InvalidArgument("row partition boundaries must be non-decreasing");
  }
}

RowPartition partition_rows_by_nnz(const CsrMatrix& a, std::size_t p) {
  if (p == 0) throw InvalidArgument("partition count must be at least 1");

  const auto rowptr = a.rowptr();
  const std::size_t n = a.nrows();
  const auto nnz = static_cast<unsigned long long>(a.nnz());

  std::vector<std::size_t> b(p + 1, 0);
  b[p] = n;
  for (std::size_t k = 1; k < p; ++k) {
    // rowptr[r] >= k*nnz/p  <=>  rowptr[r]*p >= k*nnz, kept in integers.
    const auto first = std::partition_point(
        rowptr.begin(), rowptr.end(),
        [&](std::uint32_t v) { return static_cast<unsigned long long>(v) * p < k * nnz; });
    const auto r = std::min<std::size_t>(static_cast<std::size_t>(first - rowptr.begin()), n);
    b[k] = std::max(r, b[k - 1]);
  }
  return RowPartition(std::move(b));
}

}  // namespace spmvsel
