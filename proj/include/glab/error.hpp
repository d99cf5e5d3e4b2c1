#pragma once

#include <stdexcept>
#include <string>

namespace glab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A partial map (the shift, a power of the shift) was applied outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two paths (or groupoid elements) do not meet at the junction.
class ComposabilityError : public Error {
 public:
  using Error::Error;
};

/// The requested backend or construction is not supported.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (config, graph, matrix, sequence).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A bounded search (cover, witness, density) ran out of its iteration budget.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace glab
