#pragma once

// Character cursor shared by the hand-written parsers.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "ipj/error.hpp"

namespace ipj::detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t line_offset = 0)
      : text_(text), line_offset_(line_offset) {}

  std::size_t pos() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }
  bool at_end() const { return pos_ >= text_.size(); }
  std::string_view rest() const { return text_.substr(pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek_at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  /// Skips whitespace, then consumes `s` if it is next.
  bool accept(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  bool looking_at(std::string_view s) {
    skip_ws();
    return text_.substr(pos_, s.size()) == s;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail(ErrorKind::Syntax, "expected '" + std::string(s) + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string read_ident() {
    skip_ws();
    if (!ident_start(peek())) fail(ErrorKind::Syntax, "expected identifier");
    std::size_t start = pos_;
    while (ident_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  /// Optional leading '-', then digits.
  std::string read_int() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      pos_ = start;
      fail(ErrorKind::Syntax, "expected integer");
    }
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool digit_next() {
    skip_ws();
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) ||
           (c == '-' && std::isdigit(static_cast<unsigned char>(peek_at(1))));
  }

  [[noreturn]] void fail(ErrorKind kind, const std::string& message) const {
    std::size_t line = 1 + line_offset_;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(kind, message, line, col);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_offset_ = 0;
};

}  // namespace ipj::detail
