#ifndef SPMVSEL_GENERATE_HPP
#define SPMVSEL_GENERATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "spmvsel/csr_matrix.hpp"

namespace spmvsel {

/// Synthetic matrix families, each shaped after one bottleneck class:
///   banded      contiguous near-diagonal columns (regular, cache friendly)
///   irregular   uniformly random columns (latency bound)
///   skewed      power-law row lengths (imbalance bound)
///   small-dense dense rows in a matrix small enough for the LLC (compute bound)
enum class MatrixKind { kBanded, kIrregular, kSkewed, kSmallDense };

std::string_view matrix_kind_name(MatrixKind k);
std::optional<MatrixKind> parse_matrix_kind(std::string_view name);

struct GenerateOptions {
  MatrixKind kind = MatrixKind::kBanded;
  std::size_t n = 0;            // square n x n
  std::size_t nnz_per_row = 0;  // band width / row length / mean row length
  std::uint64_t seed = 0;
  /// small-dense only: reject shapes whose SpMV working set exceeds this
  /// many bytes (0 disables the check).
  std::size_t llc_bytes = 0;
};

/// Deterministic for a given options value. Throws InvalidArgument for zero
/// sizes or a small-dense matrix that does not fit `llc_bytes`.
CsrMatrix generate_matrix(const GenerateOptions& opts);

}  // namespace spmvsel

#endif  // SPMVSEL_GENERATE_HPP
