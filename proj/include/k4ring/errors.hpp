#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace k4ring {

/// Raised when an exact integer computation leaves the 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Coefficient sequences or matrices whose shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation that needs a finite group was handed one with free rank.
class InfiniteGroupError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// K-classes from two different rings were combined.
class MixedRingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax or validation failure in ring or expression text. Line and column
/// are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace k4ring
