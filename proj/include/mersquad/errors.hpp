#pragma once

#include <stdexcept>

namespace mersquad {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (e.g. inverting a quadratic below its minimum value).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a dataset or configuration invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mersquad
