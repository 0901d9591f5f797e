#include "spmvsel/csr_matrix.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <fmt/core.h>

#include "spmvsel/error.hpp"

namespace spmvsel {

void TripletList::validate() const {
  for (const Triplet& e : entries) {
    if (e.row >= nrows || e.col >= ncols) {
      throw InvalidArgument(fmt::format("entry ({}, {}) outside {}x{} matrix", e.row, e.col,
                                        nrows, ncols));
    }
  }
}

template <typename Index>
BasicCsrMatrix<Index>::BasicCsrMatrix(std::size_t nrows, std::size_t ncols,
                                      std::vector<Index> rowptr, std::vector<Index> colind,
                                      std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      rowptr_(std::move(rowptr)),
      colind_(std::move(colind)),
      values_(std::move(values)) {
  if (rowptr_.size() != nrows_ + 1) {
    throw InvalidArgument(
        fmt::format("rowptr has {} entries, expected {}", rowptr_.size(), nrows_ + 1));
  }
  if (colind_.size() != values_.size()) {
    throw InvalidArgument("colind and values differ in length");
  }
  if (rowptr_.front() != 0 || static_cast<std::size_t>(rowptr_.back()) != values_.size()) {
    throw InvalidArgument("rowptr must start at 0 and end at nnz");
  }
  for (std::size_t i = 0; i < nrows_; ++i) {
    if (rowptr_[i + 1] < rowptr_[i]) {
      throw InvalidArgument(fmt::format("rowptr decreases at row {}", i));
    }
    for (auto j = rowptr_[i]; j < rowptr_[i + 1]; ++j) {
      if (static_cast<std::size_t>(colind_[j]) >= ncols_) {
        throw InvalidArgument(fmt::format("column {} out of range in row {}", colind_[j], i));
      }
      if (j > rowptr_[i] && colind_[j] <= colind_[j - 1]) {
        throw InvalidArgument(fmt::format("columns not strictly increasing in row {}", i));
      }
    }
  }
}

template class BasicCsrMatrix<std::uint32_t>;
template class BasicCsrMatrix<std::uint64_t>;

CsrMatrix csr_from_triplets(const TripletList& t) {
  t.validate();
  constexpr auto kMaxIndex = std::numeric_limits<std::uint32_t>::max();
  if (t.ncols > kMaxIndex || t.entries.size() > kMaxIndex) {
    throw InvalidArgument("matrix too large for 32-bit indices");
  }

  std::vector<Triplet> sorted = t.entries;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<std::uint32_t> rowptr(t.nrows + 1, 0);
  std::vector<std::uint32_t> colind;
  std::vector<double> values;
  colind.reserve(sorted.size());
  values.reserve(sorted.size());

  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const Triplet& e = sorted[k];
    if (k > 0 && sorted[k - 1].row == e.row && sorted[k - 1].col == e.col) {
      values.back() += e.value;
      continue;
    }
    colind.push_back(static_cast<std::uint32_t>(e.col));
    values.push_back(e.value);
    ++rowptr[e.row + 1];
  }
  for (std::size_t i = 0; i < t.nrows; ++i) rowptr[i + 1] += rowptr[i];

  return CsrMatrix(t.nrows, t.ncols, std::move(rowptr), std::move(colind), std::move(values));
}

TripletList to_triplets(const CsrMatrix& a) {
  TripletList t{a.nrows(), a.ncols(), {}};
  t.entries.reserve(a.nnz());
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    for (std::size_t j = a.row_begin(i); j < a.row_end(i); ++j) {
      t.entries.push_back({i, a.colind()[j], a.values()[j]});
    }
  }
  return t;
}

DenseMatrix to_dense(const CsrMatrix& a) {
  DenseMatrix d{a.nrows(), a.ncols(), std::vector<double>(a.nrows() * a.ncols(), 0.0)};
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    for (std::size_t j = a.row_begin(i); j < a.row_end(i); ++j) {
      d(i, a.colind()[j]) = a.values()[j];
    }
  }
  return d;
}

WideCsrMatrix widen(const CsrMatrix& a) {
  std::vector<std::uint64_t> rowptr(a.rowptr().begin(), a.rowptr().end());
  std::vector<std::uint64_t> colind(a.colind().begin(), a.colind().end());
  std::vector<double> values(a.values().begin(), a.values().end());
  return WideCsrMatrix(a.nrows(), a.ncols(), std::move(rowptr), std::move(colind),
                       std::move(values));
}

}  // namespace spmvsel
