#include "xwfrag/value.h"

#include <algorithm>

namespace xwfrag {
namespace {

struct DecimalParts {
  bool negative = false;
  std::string_view integral;    // no leading zeros
  std::string_view fractional;  // no trailing zeros
};

DecimalParts Split(std::string_view text) {
  DecimalParts parts;
  if (!text.empty() && text.front() == '-') {
    parts.negative = true;
    text.remove_prefix(1);
  }
  const size_t dot = text.find('.');
  std::string_view integral = text.substr(0, dot);
  std::string_view fractional = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  while (!integral.empty() && integral.front() == '0') integral.remove_prefix(1);
  while (!fractional.empty() && fractional.back() == '0') fractional.remove_suffix(1);
  parts.integral = integral;
  parts.fractional = fractional;
  // -0 and 0 are the same number.
  if (integral.empty() && fractional.empty()) parts.negative = false;
  return parts;
}

std::strong_ordering CompareMagnitude(const DecimalParts& a, const DecimalParts& b) {
  if (a.integral.size() != b.integral.size()) return a.integral.size() <=> b.integral.size();
  if (int c = a.integral.compare(b.integral); c != 0) return c <=> 0;
  // Fractional parts compare lexicographically once trailing zeros are gone.
  if (int c = a.fractional.compare(b.fractional); c != 0) return c <=> 0;
  return std::strong_ordering::equal;
}

std::strong_ordering Reverse(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return std::strong_ordering::greater;
  if (o == std::strong_ordering::greater) return std::strong_ordering::less;
  return o;
}

}  // namespace

std::string_view CompareOpSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kLt: return "<";
    case CompareOp::kGt: return ">";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGe: return ">=";
    case CompareOp::kNe: return "!=";
  }
  return "?";
}

std::optional<CompareOp> ParseCompareOp(std::string_view symbol) {
  if (symbol == "=") return CompareOp::kEq;
  if (symbol == "<") return CompareOp::kLt;
  if (symbol == ">") return CompareOp::kGt;
  if (symbol == "<=" || symbol == "≤") return CompareOp::kLe;
  if (symbol == ">=" || symbol == "≥") return CompareOp::kGe;
  if (symbol == "!=" || symbol == "≠") return CompareOp::kNe;
  return std::nullopt;
}

CompareOp Negate(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return CompareOp::kNe;
    case CompareOp::kNe: return CompareOp::kEq;
    case CompareOp::kLt: return CompareOp::kGe;
    case CompareOp::kGe: return CompareOp::kLt;
    case CompareOp::kGt: return CompareOp::kLe;
    case CompareOp::kLe: return CompareOp::kGt;
  }
  return op;
}

bool Holds(CompareOp op, std::strong_ordering ordering) {
  switch (op) {
    case CompareOp::kEq: return ordering == 0;
    case CompareOp::kNe: return ordering != 0;
    case CompareOp::kLt: return ordering < 0;
    case CompareOp::kGt: return ordering > 0;
    case CompareOp::kLe: return ordering <= 0;
    case CompareOp::kGe: return ordering >= 0;
  }
  return false;
}

bool IsDecimal(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  const size_t dot = text.find('.');
  std::string_view integral = text.substr(0, dot);
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(integral)) return false;
  if (dot == std::string_view::npos) return true;
  return all_digits(text.substr(dot + 1));
}

std::strong_ordering CompareDecimals(std::string_view lhs, std::string_view rhs) {
  const DecimalParts a = Split(lhs);
  const DecimalParts b = Split(rhs);
  if (a.negative != b.negative) return a.negative ? std::strong_ordering::less : std::strong_ordering::greater;
  const std::strong_ordering magnitude = CompareMagnitude(a, b);
  return a.negative ? Reverse(magnitude) : magnitude;
}

std::strong_ordering CompareValues(std::string_view lhs, std::string_view rhs) {
  if (IsDecimal(lhs) && IsDecimal(rhs)) return CompareDecimals(lhs, rhs);
  return lhs.compare(rhs) <=> 0;
}

}  // namespace xwfrag
