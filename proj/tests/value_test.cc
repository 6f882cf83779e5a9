#include "xwfrag/value.h"

#include <gtest/gtest.h>

#include <vector>

namespace xwfrag {
namespace {

TEST(ValueTest, DecimalSyntax) {
  for (const char* ok : {"0", "13", "-7", "10.5", "-0.25", "007"}) EXPECT_TRUE(IsDecimal(ok)) << ok;
  for (const char* bad : {"", "-", ".5", "5.", "1e3", "+1", " 1", "1 ", "Brand#1", "1992-01-01"}) {
    EXPECT_FALSE(IsDecimal(bad)) << bad;
  }
}

TEST(ValueTest, NumericComparisonIsExact) {
  EXPECT_EQ(CompareValues("9", "10"), std::strong_ordering::less);
  EXPECT_EQ(CompareValues("13", "13.0"), std::strong_ordering::equal);
  EXPECT_EQ(CompareValues("007", "7"), std::strong_ordering::equal);
  EXPECT_EQ(CompareValues("-2", "-10"), std::strong_ordering::greater);
  EXPECT_EQ(CompareValues("-0", "0"), std::strong_ordering::equal);
  EXPECT_EQ(CompareValues("0.1000000000000000000001", "0.1"), std::strong_ordering::greater);
  EXPECT_EQ(CompareValues("10.5", "10.49999"), std::strong_ordering::greater);
}

TEST(ValueTest, MixedComparisonIsLexicographic) {
  EXPECT_EQ(CompareValues("9", "Brand#1"), std::strong_ordering::less);
  EXPECT_EQ(CompareValues("", "0"), std::strong_ordering::less);
  EXPECT_EQ(CompareValues("ASIA", "AFRICA"), std::strong_ordering::greater);
  EXPECT_EQ(CompareValues("1992-01-10", "1992-01-09"), std::strong_ordering::greater);
}

TEST(ValueTest, NegationIsTheComplement) {
  const std::vector<std::string> values = {"", "-1", "0", "7", "13", "13.0", "20", "abc", "Brand#2"};
  for (CompareOp op : kAllCompareOps) {
    EXPECT_EQ(Negate(Negate(op)), op);
    for (const auto& x : values) {
      for (const auto& v : values) {
        EXPECT_NE(EvaluateComparison(x, op, v), EvaluateComparison(x, Negate(op), v))
            << x << ' ' << CompareOpSymbol(op) << ' ' << v;
      }
    }
  }
  EXPECT_EQ(Negate(CompareOp::kGt), CompareOp::kLe);
  EXPECT_EQ(Negate(CompareOp::kEq), CompareOp::kNe);
  EXPECT_EQ(Negate(CompareOp::kLt), CompareOp::kGe);
}

TEST(ValueTest, OperatorSymbolsRoundTrip) {
  for (CompareOp op : kAllCompareOps) EXPECT_EQ(ParseCompareOp(CompareOpSymbol(op)), op);
  EXPECT_EQ(ParseCompareOp("≤"), CompareOp::kLe);
  EXPECT_EQ(ParseCompareOp("≥"), CompareOp::kGe);
  EXPECT_EQ(ParseCompareOp("≠"), CompareOp::kNe);
  EXPECT_FALSE(ParseCompareOp("=="));
}

}  // namespace
}  // namespace xwfrag
