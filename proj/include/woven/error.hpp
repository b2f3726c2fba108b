#pragma once

#include <stdexcept>
#include <string>

namespace woven {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidMatrix : Error {
  using Error::Error;
};

struct AmbientMismatch : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct NotAFrame : Error {
  using Error::Error;
};

struct InvalidScale : Error {
  using Error::Error;
};

struct SingularOperator : Error {
  using Error::Error;
};

struct TooManyPartitions : Error {
  using Error::Error;
};

// Misused preconditions that are not one of the named conditions above
// (bad partition bitmask, nonpositive woven constant, bad generator sizes).
struct InvalidArgument : Error {
  using Error::Error;
};

struct GenerationFailure : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace woven
