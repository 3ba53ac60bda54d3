#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace exotic {

/// Malformed input to an algorithm (unknown generator, non-symmetric form, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Family parameters outside the admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A surgery tried to remove a relation the base presentation does not carry.
class ScheduleMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller compared objects for which the comparison has no meaning.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Text that does not parse. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        detail_(msg),
        line_(line),
        column_(column) {}

  /// The message without the position prefix.
  [[nodiscard]] const std::string& detail() const { return detail_; }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace exotic

namespace exotic {

/// An operation whose precondition gate has not been certified.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace exotic
