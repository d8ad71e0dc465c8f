#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perturb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different series rings (generators or truncation differ).
class IncompatibleRing : public Error {
 public:
  using Error::Error;
};

/// Division by an element of the maximal ideal.
class NonUnit : public Error {
 public:
  using Error::Error;
};

/// A precondition on mathematical content was violated (non-infinitesimal
/// input, non-Hermitian matrix, wrong multiplicity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The leading-order balance vanishes up to the truncation order; a finer
/// analysis (dominant balance, higher truncation) is required.
class Degenerate : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace perturb
