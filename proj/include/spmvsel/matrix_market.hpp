#ifndef SPMVSEL_MATRIX_MARKET_HPP
#define SPMVSEL_MATRIX_MARKET_HPP

#include <filesystem>
#include <iosfwd>

#include "spmvsel/csr_matrix.hpp"

namespace spmvsel {

/// Reads a `%%MatrixMarket matrix coordinate {real|integer|pattern}
/// {general|symmetric}` stream. Indices are converted to 0-based, pattern
/// entries get 1.0 and symmetric off-diagonal entries are mirrored.
/// Throws ParseError on anything else.
TripletList parse_matrix_market(std::istream& in);

TripletList read_matrix_market(const std::filesystem::path& path);

/// Convenience: read + csr_from_triplets.
CsrMatrix load_csr(const std::filesystem::path& path);

/// Writes `a` as `coordinate real general` with round-trip precision values.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);

}  // namespace spmvsel

#endif  // SPMVSEL_MATRIX_MARKET_HPP
