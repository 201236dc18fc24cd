#pragma once

#include <stdexcept>
#include <string>

namespace realgit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector sizes do not agree with the declared dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a mathematical precondition (direction not in p,
/// zero projective vector, non-commuting slice generators, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace realgit
