#pragma once

#include <stdexcept>

namespace ustatboot {

/// Invalid argument: index out of range, bad parameter, dimension mismatch.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is too short for the requested operation.
class SizeError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Malformed or non-finite data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ustatboot
