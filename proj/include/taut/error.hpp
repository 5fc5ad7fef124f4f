#pragma once

#include <stdexcept>
#include <string>

namespace taut {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated operation precondition (CLI exit code 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Syntax error while parsing an expression.
class ParseError : public UsageError {
 public:
  ParseError(const std::string& message, std::size_t position, std::string expected)
      : UsageError(message + " at position " + std::to_string(position) +
                   (expected.empty() ? std::string() : " (expected " + expected + ")")),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// A well-formed request the engine declines to compute: division by zero,
/// poles, out-of-range enumerations (CLI exit code 2).
class RefusalError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant violation (CLI exit code 3).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace taut
