"""Classify the bottleneck of a sparse matrix-vector product and suggest an optimization."""

from ._spmvsel import (
    AdvisorConfig,
    CsrMatrix,
    Error,
    Model,
    UsageError,
    advise,
    extract_features,
    feature_names,
    feature_subset,
    generate,
    load_matrix,
    load_model,
    loo_accuracy,
    parse_matrix,
    speedup_stats,
    spmv,
    train_model,
)

__all__ = [
    "AdvisorConfig",
    "CsrMatrix",
    "Error",
    "Model",
    "UsageError",
    "advise",
    "extract_features",
    "feature_names",
    "feature_subset",
    "generate",
    "load_matrix",
    "load_model",
    "loo_accuracy",
    "parse_matrix",
    "speedup_stats",
    "spmv",
    "train_model",
]
