#pragma once

#include <stdexcept>
#include <string>

namespace schwinger {

/// Invalid user-supplied parameters or configuration. CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands whose sizes do not agree (site count, matrix dimension, parameter count).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested dense object would exceed the configured site limit.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant was violated (non-Hermitian state, complex energy, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schwinger
