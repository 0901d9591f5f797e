#ifndef SPMVSEL_MATRIX_CLASS_HPP
#define SPMVSEL_MATRIX_CLASS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace spmvsel {

/// Dominant SpMV bottleneck. Enum order is the tie-break order used by every
/// classifier.
enum class MatrixClass {
  kCML,  ///< cache-miss latency bound
  kMB,   ///< memory bandwidth bound
  kIMB,  ///< load imbalance bound
  kCMP,  ///< compute bound
};

inline constexpr std::size_t kNumClasses = 4;
inline constexpr std::array<MatrixClass, kNumClasses> kAllClasses = {
    MatrixClass::kCML, MatrixClass::kMB, MatrixClass::kIMB, MatrixClass::kCMP};

constexpr std::size_t class_index(MatrixClass c) { return static_cast<std::size_t>(c); }

std::string_view class_name(MatrixClass c);
std::optional<MatrixClass> parse_class(std::string_view name);

enum class OptimizationKind {
  kSoftwarePrefetch,    ///< software prefetching on vector x
  kDeltaCompression,    ///< column index compression through delta coding
  kDynamicScheduling,   ///< dynamic row scheduling
  kUnrollVectorize,     ///< inner loop unrolling + vectorization
};

OptimizationKind optimization_for(MatrixClass c);
std::string_view optimization_description(OptimizationKind k);
/// Kernel variant name used by the bench command ("prefetch", "delta", ...).
std::string_view optimization_variant(OptimizationKind k);

}  // namespace spmvsel

#endif  // SPMVSEL_MATRIX_CLASS_HPP
