#pragma once

#include <stdexcept>
#include <string>

namespace nlt {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter or violated precondition (bad alpha, weight exponent, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Field holds NaN or Inf.
class PoisonedFieldError : public Error {
 public:
  using Error::Error;
};

/// Data not decaying near the edge of the periodic box, or a window that does
/// not fit inside it.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index or spectral band outside the supported range.
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlt
