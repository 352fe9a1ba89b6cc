#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtorus {

/// Domain failure: input that is well formed but mathematically unusable
/// (a non-injective endomorphism, a subgroup that reduces to the identity).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) {
      return column == 0 ? what
                         : "column " + std::to_string(column) + ": " + what;
    }
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace mtorus
