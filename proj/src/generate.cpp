#include "spmvsel/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "spmvsel/error.hpp"
#include "spmvsel/features.hpp"

namespace spmvsel {
namespace {

constexpr std::array<std::pair<MatrixKind, std::string_view>, 4> kKindNames = {{
    {MatrixKind::kBanded, "banded"},
    {MatrixKind::kIrregular, "irregular"},
    {MatrixKind::kSkewed, "skewed"},
    {MatrixKind::kSmallDense, "small-dense"},
}};

// std::*_distribution output is implementation-defined; these mappings of raw
// mt19937_64 words keep generated files identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound).
  std::size_t below(std::size_t bound) {
    const unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
    return static_cast<std::size_t>(product >> 64);
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

 private:
  std::mt19937_64 engine_;
};

/// k distinct sorted columns from [0, n).
std::vector<std::size_t> distinct_columns(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> cols;
  if (4 * k >= n) {
    cols.resize(n);
    std::iota(cols.begin(), cols.end(), 0);
    for (std::size_t i = 0; i < k; ++i) std::swap(cols[i], cols[i + rng.below(n - i)]);
    cols.resize(k);
  } else {
    // Floyd's sampling.
    std::unordered_set<std::size_t> chosen;
    for (std::size_t j = n - k; j < n; ++j) {
      const std::size_t t = rng.below(j + 1);
      chosen.insert(chosen.count(t) ? j : t);
    }
    cols.assign(chosen.begin(), chosen.end());
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

void append_row(TripletList& t, std::size_t row, const std::vector<std::size_t>& cols, Rng& rng) {
  for (std::size_t c : cols) t.entries.push_back({row, c, rng.uniform(0.5, 1.5)});
}

}  // namespace

std::string_view matrix_kind_name(MatrixKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<MatrixKind> parse_matrix_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

CsrMatrix generate_matrix(const GenerateOptions& opts) {
  const std::size_t n = opts.n;
  if (n == 0 || opts.nnz_per_row == 0) {
    throw InvalidArgument("matrix size and nonzeros per row must be positive");
  }
  const std::size_t k = std::min(opts.nnz_per_row, n);
  Rng rng(opts.seed);
  TripletList t{n, n, {}};

  switch (opts.kind) {
    case MatrixKind::kBanded: {
      t.entries.reserve(n * k);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t half = (k - 1) / 2;
        const std::size_t start = std::min(i > half ? i - half : 0, n - k);
        std::vector<std::size_t> cols(k);
        std::iota(cols.begin(), cols.end(), start);
        append_row(t, i, cols, rng);
      }
      break;
    }
    case MatrixKind::kIrregular:
    case MatrixKind::kSmallDense: {
      t.entries.reserve(n * k);
      for (std::size_t i = 0; i < n; ++i) append_row(t, i, distinct_columns(rng, n, k), rng);
      break;
    }
    case MatrixKind::kSkewed: {
      // Row of rank r (1-based) gets floor(peak / r) nonzeros, Zipf-like; the
      // peak is chosen so the mean lands near nnz_per_row, capped at n.
      double harmonic = 0.0;
      for (std::size_t r = 1; r <= n; ++r) harmonic += 1.0 / static_cast<double>(r);
      const double peak = std::min(static_cast<double>(n),
                                   static_cast<double>(opts.nnz_per_row) *
                                       static_cast<double>(n) / harmonic);
      std::vector<std::size_t> rank(n);
      std::iota(rank.begin(), rank.end(), 1);
      for (std::size_t i = n; i > 1; --i) std::swap(rank[i - 1], rank[rng.below(i)]);
      for (std::size_t i = 0; i < n; ++i) {
        const auto len = static_cast<std::size_t>(
            std::max(1.0, std::floor(peak / static_cast<double>(rank[i]))));
        append_row(t, i, distinct_columns(rng, n, std::min(len, n)), rng);
      }
      break;
    }
  }

  CsrMatrix a = csr_from_triplets(t);
  if (opts.kind == MatrixKind::kSmallDense && opts.llc_bytes > 0) {
    const std::size_t bytes = working_set_bytes(a, CacheConfig{});
    if (bytes > opts.llc_bytes) {
      throw InvalidArgument(fmt::format(
          "small-dense matrix needs {} bytes, more than the {} byte LLC", bytes, opts.llc_bytes));
    }
  }
  return a;
}

}  // namespace spmvsel
