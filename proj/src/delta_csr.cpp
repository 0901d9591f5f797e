#include "spmvsel/delta_csr.hpp"

#include <algorithm>
#include <limits>

#include <fmt/core.h>

#include "spmvsel/error.hpp"
#include "spmvsel/spmv.hpp"

namespace spmvsel {

bool row_fits_delta(const CsrMatrix& a, std::size_t i, std::uint32_t max_code) {
  const auto colind = a.colind();
  const std::size_t begin = a.row_begin(i), end = a.row_end(i);
  if (begin == end) return true;
  if (colind[begin] > max_code) return false;
  for (std::size_t j = begin + 1; j < end; ++j) {
    if (colind[j] - colind[j - 1] > max_code) return false;
  }
  return true;
}

namespace {

template <typename Code>
void encode_codes(const CsrMatrix& a, const std::vector<std::uint8_t>& bits,
                  std::vector<Code>& codes) {
  const auto colind = a.colind();
  codes.assign(a.nnz(), 0);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    if (!((bits[i / 8] >> (i % 8)) & 1u)) continue;
    const std::size_t begin = a.row_begin(i), end = a.row_end(i);
    if (begin == end) continue;
    codes[begin] = static_cast<Code>(colind[begin]);
    for (std::size_t j = begin + 1; j < end; ++j) {
      codes[j] = static_cast<Code>(colind[j] - colind[j - 1]);
    }
  }
}

}  // namespace

DeltaCsrMatrix encode_delta(const CsrMatrix& a) {
  constexpr std::uint32_t kMax8 = std::numeric_limits<std::uint8_t>::max();
  constexpr std::uint32_t kMax16 = std::numeric_limits<std::uint16_t>::max();

  const std::size_t n = a.nrows();
  std::size_t fits8 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (row_fits_delta(a, i, kMax8)) ++fits8;
  }

  DeltaCsrMatrix d;
  d.nrows_ = n;
  d.ncols_ = a.ncols();
  d.width_ = static_cast<double>(fits8) >= kDeltaWidthThreshold * static_cast<double>(n)
                 ? DeltaWidth::k8
                 : DeltaWidth::k16;
  const std::uint32_t max_code = d.width_ == DeltaWidth::k8 ? kMax8 : kMax16;

  d.rowptr_.assign(a.rowptr().begin(), a.rowptr().end());
  d.values_.assign(a.values().begin(), a.values().end());
  d.row_bits_.assign((n + 7) / 8, 0);

  const auto colind = a.colind();
  for (std::size_t i = 0; i < n; ++i) {
    if (row_fits_delta(a, i, max_code)) {
      d.row_bits_[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    } else {
      d.abs_rows_.push_back({i, d.abs_colind_.size()});
      d.abs_colind_.insert(d.abs_colind_.end(), colind.begin() + a.row_begin(i),
                           colind.begin() + a.row_end(i));
    }
  }

  if (d.width_ == DeltaWidth::k8) {
    encode_codes(a, d.row_bits_, d.codes8_);
  } else {
    encode_codes(a, d.row_bits_, d.codes16_);
  }
  return d;
}

template <>
const std::vector<std::uint8_t>& DeltaCsrMatrix::codes<std::uint8_t>() const {
  return codes8_;
}

template <>
const std::vector<std::uint16_t>& DeltaCsrMatrix::codes<std::uint16_t>() const {
  return codes16_;
}

std::size_t DeltaCsrMatrix::delta_row_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < nrows_; ++i) count += is_delta_row(i) ? 1 : 0;
  return count;
}

std::uint32_t DeltaCsrMatrix::code_at(std::size_t k) const {
  return width_ == DeltaWidth::k8 ? codes8_[k] : codes16_[k];
}

std::uint32_t DeltaCsrMatrix::first_col(std::size_t i) const {
  if (!is_delta_row(i) || rowptr_[i] == rowptr_[i + 1]) {
    throw InvalidArgument(fmt::format("row {} has no delta-coded first column", i));
  }
  return code_at(rowptr_[i]);
}

std::vector<std::uint32_t> DeltaCsrMatrix::gaps(std::size_t i) const {
  if (!is_delta_row(i)) throw InvalidArgument(fmt::format("row {} is stored absolute", i));
  std::vector<std::uint32_t> out;
  for (std::size_t k = rowptr_[i] + 1; k < rowptr_[i + 1]; ++k) out.push_back(code_at(k));
  return out;
}

std::size_t DeltaCsrMatrix::column_index_bytes() const {
  return codes8_.size() * sizeof(std::uint8_t) + codes16_.size() * sizeof(std::uint16_t) +
         row_bits_.size() + abs_colind_.size() * sizeof(std::uint32_t) +
         abs_rows_.size() * sizeof(AbsoluteRow);
}

std::size_t DeltaCsrMatrix::index_storage_bytes() const {
  return rowptr_.size() * sizeof(std::uint32_t) + column_index_bytes();
}

CsrMatrix DeltaCsrMatrix::decode() const {
  std::vector<std::uint32_t> colind(nnz());
  std::size_t abs_cursor = 0;
  for (std::size_t i = 0; i < nrows_; ++i) {
    const std::size_t begin = rowptr_[i], end = rowptr_[i + 1];
    if (is_delta_row(i)) {
      std::uint32_t col = 0;
      for (std::size_t k = begin; k < end; ++k) {
        col += code_at(k);
        colind[k] = col;
      }
    } else {
      const std::size_t offset = abs_rows_[abs_cursor++].offset;
      std::copy_n(abs_colind_.begin() + static_cast<std::ptrdiff_t>(offset), end - begin,
                  colind.begin() + static_cast<std::ptrdiff_t>(begin));
    }
  }
  return CsrMatrix(nrows_, ncols_, rowptr_, std::move(colind), values_);
}

template <typename Code>
void DeltaCsrMatrix::rows_kernel(const double* x, double* y, std::size_t begin,
                                 std::size_t end) const {
  const std::uint32_t* rowptr = rowptr_.data();
  const double* values = values_.data();
  const Code* codes = this->codes<Code>().data();
  const std::uint32_t* abs_colind = abs_colind_.data();

  auto abs = std::lower_bound(abs_rows_.begin(), abs_rows_.end(), begin,
                              [](const AbsoluteRow& r, std::size_t row) { return r.row < row; });

  for (std::size_t i = begin; i < end; ++i) {
    const std::uint32_t first = rowptr[i], last = rowptr[i + 1];
    double sum = 0.0;
    if (is_delta_row(i)) {
      std::uint32_t col = 0;
      for (std::uint32_t k = first; k < last; ++k) {
        col += codes[k];
        sum += values[k] * x[col];
      }
    } else {
      const std::uint32_t* cols = abs_colind + abs->offset;
      ++abs;
      for (std::uint32_t k = first; k < last; ++k) sum += values[k] * x[cols[k - first]];
    }
    y[i] = sum;
  }
}

void spmv_delta(const DeltaCsrMatrix& d, std::span<const double> x, std::span<double> y,
                const RowPartition& part, WorkerPool& pool) {
  detail::check_spmv_shapes(d.nrows(), d.ncols(), x.size(), y.size(), part);
  detail::count_kernel_invocation();
  pool.for_each_task(part.parts(), [&](std::size_t p) {
    if (d.delta_width() == DeltaWidth::k8) {
      d.rows_kernel<std::uint8_t>(x.data(), y.data(), part.begin(p), part.end(p));
    } else {
      d.rows_kernel<std::uint16_t>(x.data(), y.data(), part.begin(p), part.end(p));
    }
  });
}

std::vector<double> spmv_delta(const DeltaCsrMatrix& d, std::span<const double> x,
                               const RowPartition& part, WorkerPool& pool) {
  std::vector<double> y(d.nrows());
  spmv_delta(d, x, y, part, pool);
  return y;
}

}  // namespace spmvsel
