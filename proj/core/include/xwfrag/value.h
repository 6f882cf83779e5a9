#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace xwfrag {

// Comparison operators admitted in selection predicates. Declaration order is
// the canonical ordering used for deterministic output.
enum class CompareOp { kEq, kLt, kGt, kLe, kGe, kNe };

inline constexpr CompareOp kAllCompareOps[] = {CompareOp::kEq, CompareOp::kLt, CompareOp::kGt,
                                              CompareOp::kLe, CompareOp::kGe, CompareOp::kNe};

// "=", "<", ">", "<=", ">=", "!=".
std::string_view CompareOpSymbol(CompareOp op);
std::optional<CompareOp> ParseCompareOp(std::string_view symbol);

// The complement: !(x op v) <=> x Negate(op) v for every x, because every
// comparison resolves to exactly one of <, =, >.
CompareOp Negate(CompareOp op);

bool Holds(CompareOp op, std::strong_ordering ordering);

// Strict decimal syntax: optional '-', digits, optional '.' followed by digits.
bool IsDecimal(std::string_view text);

// Exact comparison of two strings that satisfy IsDecimal (no floating point).
std::strong_ordering CompareDecimals(std::string_view lhs, std::string_view rhs);

// Attribute values are strings. When both sides parse as decimals they compare
// numerically ("9" < "10", "13" == "13.0"); otherwise bytewise lexicographic.
std::strong_ordering CompareValues(std::string_view lhs, std::string_view rhs);

inline bool EvaluateComparison(std::string_view value, CompareOp op, std::string_view literal) {
  return Holds(op, CompareValues(value, literal));
}

}  // namespace xwfrag
