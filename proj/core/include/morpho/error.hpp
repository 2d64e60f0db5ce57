#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morpho {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// A model file or programmatic model violates a model invariant.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Evaluation failed: unbound atom or selem, wrong lattice, wrong model kind.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed derivation or unusable side condition.
class ProofError : public Error {
 public:
  using Error::Error;
};

}  // namespace morpho
