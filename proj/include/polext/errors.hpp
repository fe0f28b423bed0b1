#ifndef POLEXT_ERRORS_HPP
#define POLEXT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polext {

// Division by zero and other undefined field operations.
class ArithmeticError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Caller violated a precondition: mixed fields, ring mismatch, arity, ...
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace polext

#endif
