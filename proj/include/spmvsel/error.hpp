#ifndef SPMVSEL_ERROR_HPP
#define SPMVSEL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spmvsel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported input data (matrix files, label files, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operand sizes do not agree (vector length vs matrix shape, feature count).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid arguments (bad CSR arrays, non-positive sizes).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Model documents that cannot be loaded or do not match their consumer.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line or configuration input.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace spmvsel

#endif  // SPMVSEL_ERROR_HPP
