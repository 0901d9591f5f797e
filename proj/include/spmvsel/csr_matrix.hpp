#ifndef SPMVSEL_CSR_MATRIX_HPP
#define SPMVSEL_CSR_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spmvsel {

enum class IndexWidth { k32, k64 };

/// One coordinate entry, 0-based.
struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  bool operator==(const Triplet&) const = default;
};

/// Coordinate-format intermediate produced by the Matrix Market reader.
struct TripletList {
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::vector<Triplet> entries;

  /// Throws InvalidArgument if an entry lies outside nrows x ncols.
  void validate() const;

  bool operator==(const TripletList&) const = default;
};

/// Compressed sparse row matrix, immutable after construction.
///
/// The constructor checks every structural invariant: rowptr starts at 0,
/// is non-decreasing and ends at nnz; column indices are strictly increasing
/// within each row and smaller than ncols.
template <typename Index>
class BasicCsrMatrix {
 public:
  using index_type = Index;

  BasicCsrMatrix() : rowptr_(1, 0) {}
  BasicCsrMatrix(std::size_t nrows, std::size_t ncols, std::vector<Index> rowptr,
                 std::vector<Index> colind, std::vector<double> values);

  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const Index> rowptr() const { return rowptr_; }
  std::span<const Index> colind() const { return colind_; }
  std::span<const double> values() const { return values_; }

  std::size_t row_begin(std::size_t i) const { return static_cast<std::size_t>(rowptr_[i]); }
  std::size_t row_end(std::size_t i) const { return static_cast<std::size_t>(rowptr_[i + 1]); }
  std::size_t row_nnz(std::size_t i) const { return row_end(i) - row_begin(i); }

  static constexpr IndexWidth index_width() {
    return sizeof(Index) == 4 ? IndexWidth::k32 : IndexWidth::k64;
  }
  static constexpr std::size_t index_bytes() { return sizeof(Index); }

  /// Bytes held by rowptr and colind together.
  std::size_t index_storage_bytes() const {
    return sizeof(Index) * (rowptr_.size() + colind_.size());
  }

  bool operator==(const BasicCsrMatrix&) const = default;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<Index> rowptr_;
  std::vector<Index> colind_;
  std::vector<double> values_;
};

using CsrMatrix = BasicCsrMatrix<std::uint32_t>;
using WideCsrMatrix = BasicCsrMatrix<std::uint64_t>;

extern template class BasicCsrMatrix<std::uint32_t>;
extern template class BasicCsrMatrix<std::uint64_t>;

/// Row-major dense matrix; only used by tools and tests.
struct DenseMatrix {
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::vector<double> data;

  double& operator()(std::size_t i, std::size_t j) { return data[i * ncols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * ncols + j]; }

  bool operator==(const DenseMatrix&) const = default;
};

/// Sorts entries by (row, col) and sums duplicates. Result uses 32-bit indices.
CsrMatrix csr_from_triplets(const TripletList& t);

/// Row-major listing of the stored entries.
TripletList to_triplets(const CsrMatrix& a);

DenseMatrix to_dense(const CsrMatrix& a);

/// Copy of `a` with 64-bit row pointers and column indices.
WideCsrMatrix widen(const CsrMatrix& a);

}  // namespace spmvsel

#endif  // SPMVSEL_CSR_MATRIX_HPP
