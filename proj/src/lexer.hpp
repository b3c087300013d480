#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "sortsynth/term.hpp"

namespace sortsynth::detail {

// Character cursor shared by the term, formula, algorithm and theory parsers.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool atEnd() {
    skipSpace();
    return pos_ >= text_.size();
  }
  char peek() {
    skipSpace();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool acceptWord(std::string_view w) {
    skipSpace();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < text_.size() && isIdentChar(text_[end])) return false;
    pos_ = end;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  // Identifiers may carry an `sk:` or `meta:` prefix.
  std::string ident() {
    skipSpace();
    std::size_t start = pos_;
    for (std::string_view prefix : {"sk:", "meta:"}) {
      if (text_.substr(pos_, prefix.size()) == prefix) {
        pos_ += prefix.size();
        break;
      }
    }
    std::size_t body = pos_;
    while (pos_ < text_.size() && isIdentChar(text_[pos_])) ++pos_;
    if (pos_ == body) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  bool peekIdent() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool peekNumber() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
  }
  long long number() {
    skipSpace();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) fail("expected integer");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }
  std::size_t pos() const { return pos_; }
  std::string_view rest() const { return text_.substr(pos_); }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  static bool isIdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Term parseTermAt(Cursor& cur, const Signature& sig);
}  // namespace sortsynth::detail

namespace sortsynth {
class Formula;
}

namespace sortsynth::detail {
Formula parseFormulaAt(Cursor& cur, const Signature& sig);

}  // namespace sortsynth::detail
