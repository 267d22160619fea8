#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ipj {

enum class ErrorKind {
  DivisionByZero,
  Range,
  Syntax,
  NestedProbability,
  Template,
  Undecidable,
  UnknownAtom,
  Universe,
  Model,
  Size,
  Config,
  DuplicateEntry,
  Structure,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the kernel. The kind is stable and is what the CLI
/// and the tests dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column)
      : Error(kind, message + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ipj
