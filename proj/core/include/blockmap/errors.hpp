#pragma once

#include <stdexcept>
#include <string>

namespace blockmap {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad size, out-of-range parameter, malformed map).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A sampler gave up after exhausting its configured rejection budget.
class RejectionLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input while parsing a file format.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace blockmap
