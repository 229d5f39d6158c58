#pragma once

#include <stdexcept>
#include <string>

namespace entropykit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or document text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  int line_;
  int column_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& name, int line, int column)
      : ParseError("unknown identifier '" + name + "'", line, column), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Raised when a symbolic operation leaves the real domain (e.g. even root of a negative constant).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numeric evaluation hit ln(x<=0), a non-finite value, or an unvalued symbol.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ChartMismatchError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace entropykit
