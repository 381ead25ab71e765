#pragma once

#include <stdexcept>
#include <string>

namespace powermat {

// Base for every error raised by the library. Callers that only need to
// distinguish "library refused" from "bug" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

// Raised when a result would contain NaN/Inf (e.g. a matrix power overflowed).
class NonFinite : public Error {
 public:
  using Error::Error;
};

// The caller-facing precondition of an operation does not hold for the input.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class AmbiguousDominant : public Error {
 public:
  using Error::Error;
};

class ReconstructionFailure : public Error {
 public:
  using Error::Error;
};

class DivergingAccumulation : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

// A file or stream could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed matrix/report input. Carries a 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

}  // namespace powermat
