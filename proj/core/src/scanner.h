#pragma once

// Hand-written tokenizer shared by the workload and condition parsers.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "xwfrag/error.h"
#include "xwfrag/value.h"

namespace xwfrag::internal {

inline bool IsIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool AtEnd() {
    SkipSpace();
    return pos_ >= text_.size();
  }

  // Reads a leading "(: ... :)" comment, if present, without treating it as
  // whitespace. Returns its body.
  std::optional<std::string> TakeComment() {
    SkipSpace(/*skip_comments=*/false);
    if (!text_.substr(pos_).starts_with("(:")) return std::nullopt;
    const size_t end = text_.find(":)", pos_ + 2);
    if (end == std::string_view::npos) Fail("unterminated comment");
    std::string body(text_.substr(pos_ + 2, end - pos_ - 2));
    Advance(end + 2 - pos_);
    return body;
  }

  bool TryConsume(std::string_view token) {
    SkipSpace();
    if (!text_.substr(pos_).starts_with(token)) return false;
    // Keywords must not be the prefix of a longer identifier.
    if (IsIdentChar(token.back()) && pos_ + token.size() < text_.size() &&
        IsIdentChar(text_[pos_ + token.size()]) && IsIdentStart(token.front())) {
      return false;
    }
    Advance(token.size());
    return true;
  }

  void Expect(std::string_view token) {
    if (!TryConsume(token)) Fail("expected '" + std::string(token) + "'");
  }

  std::string Identifier() {
    SkipSpace();
    if (pos_ >= text_.size() || !IsIdentStart(text_[pos_])) Fail("expected a name");
    size_t end = pos_ + 1;
    while (end < text_.size() && IsIdentChar(text_[end])) ++end;
    std::string out(text_.substr(pos_, end - pos_));
    Advance(end - pos_);
    return out;
  }

  std::string Variable() {
    SkipSpace();
    if (Peek() != '$') Fail("expected a variable");
    Advance(1);
    if (pos_ >= text_.size() || !IsIdentStart(text_[pos_])) Fail("expected a variable name");
    size_t end = pos_ + 1;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
    std::string out(text_.substr(pos_, end - pos_));
    Advance(end - pos_);
    return out;
  }

  // Quoted string ('' or "" doubles the quote) or an unquoted decimal.
  std::string Literal() {
    SkipSpace();
    const char c = Peek();
    if (c == '\'' || c == '"') {
      std::string out;
      size_t i = pos_ + 1;
      for (;;) {
        if (i >= text_.size()) Fail("unterminated string literal");
        if (text_[i] == c) {
          if (i + 1 < text_.size() && text_[i + 1] == c) {
            out += c;
            i += 2;
            continue;
          }
          break;
        }
        out += text_[i++];
      }
      Advance(i + 1 - pos_);
      return out;
    }
    size_t end = pos_;
    if (end < text_.size() && text_[end] == '-') ++end;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) ++end;
    std::string candidate(text_.substr(pos_, end - pos_));
    if (!IsDecimal(candidate)) Fail("expected a literal");
    Advance(end - pos_);
    return candidate;
  }

  std::optional<CompareOp> TryOperator() {
    SkipSpace();
    for (std::string_view symbol : {"<=", ">=", "!=", "≤", "≥", "≠", "=", "<", ">"}) {
      if (text_.substr(pos_).starts_with(symbol)) {
        Advance(symbol.size());
        return ParseCompareOp(symbol);
      }
    }
    return std::nullopt;
  }

  char Peek() {
    SkipSpace();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // True when the upcoming token is a name immediately followed by '('.
  bool PeekFunctionCall() {
    SkipSpace();
    size_t i = pos_;
    if (i >= text_.size() || !IsIdentStart(text_[i])) return false;
    while (i < text_.size() && (IsIdentChar(text_[i]) || text_[i] == ':')) ++i;
    while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
    return i < text_.size() && text_[i] == '(';
  }

  int line() const { return line_; }
  int column() const { return column_; }

  [[noreturn]] void Fail(const std::string& message) {
    throw Error(ErrorCode::kSyntaxError, message, line_, column_);
  }

 private:
  void SkipSpace(bool skip_comments = true) {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) Advance(1);
      if (skip_comments && text_.substr(pos_).starts_with("(:")) {
        const size_t end = text_.find(":)", pos_ + 2);
        if (end == std::string_view::npos) Fail("unterminated comment");
        Advance(end + 2 - pos_);
        continue;
      }
      return;
    }
  }

  void Advance(size_t n) {
    for (size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace xwfrag::internal
