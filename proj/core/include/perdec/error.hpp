#pragma once

#include <stdexcept>
#include <string>

namespace perdec {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A query left the evaluation domain of a partial (window) configuration.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A search or stabilization ran out of its caller-supplied bound. This is
// not a refutation: a larger bound may succeed.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Indicates a bug or a violated
// precondition that slipped past the up-front checks.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace perdec
