#include "spmvsel/matrix_class.hpp"

namespace spmvsel {

std::string_view class_name(MatrixClass c) {
  switch (c) {
    case MatrixClass::kCML: return "CML";
    case MatrixClass::kMB: return "MB";
    case MatrixClass::kIMB: return "IMB";
    case MatrixClass::kCMP: return "CMP";
  }
  return "?";
}

std::optional<MatrixClass> parse_class(std::string_view name) {
  for (MatrixClass c : kAllClasses) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

OptimizationKind optimization_for(MatrixClass c) {
  switch (c) {
    case MatrixClass::kCML: return OptimizationKind::kSoftwarePrefetch;
    case MatrixClass::kMB: return OptimizationKind::kDeltaCompression;
    case MatrixClass::kIMB: return OptimizationKind::kDynamicScheduling;
    case MatrixClass::kCMP: return OptimizationKind::kUnrollVectorize;
  }
  return OptimizationKind::kUnrollVectorize;
}

std::string_view optimization_description(OptimizationKind k) {
  switch (k) {
    case OptimizationKind::kSoftwarePrefetch: return "software prefetching on vector x";
    case OptimizationKind::kDeltaCompression:
      return "column index compression through delta coding";
    case OptimizationKind::kDynamicScheduling: return "auto or dynamic scheduling";
    case OptimizationKind::kUnrollVectorize: return "inner loop unrolling + vectorization";
  }
  return "?";
}

std::string_view optimization_variant(OptimizationKind k) {
  switch (k) {
    case OptimizationKind::kSoftwarePrefetch: return "prefetch";
    case OptimizationKind::kDeltaCompression: return "delta";
    case OptimizationKind::kDynamicScheduling: return "scheduled";
    case OptimizationKind::kUnrollVectorize: return "unrolled";
  }
  return "?";
}

}  // namespace spmvsel
