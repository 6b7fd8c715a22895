#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL or formula text. Carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates an operation's contract (unknown names,
/// arity mismatches, sets outside the universe, non-nested sets, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis of an operation does not hold on the input,
/// e.g. a set that is not definably closed or not invariant.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A bounded search ended without an answer. This is not a proof of absence.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug.
class LogicError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtg
