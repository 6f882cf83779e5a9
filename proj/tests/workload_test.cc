#include "xwfrag/workload.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "xwfrag/error.h"
#include "xwfrag/generator.h"

namespace xwfrag {
namespace {

using testing::Pred;

WarehouseMeta XwebMeta() {
  WarehouseMeta meta;
  meta.fact_sets.push_back({"sales", {"amount", "quantity"}, {"Customer", "Supplier", "Date", "Part"}});
  meta.dimensions = {
      {"Customer", {{"customer", {"c_mktsegment", "c_name", "c_nation_key", "c_region"}}}},
      {"Supplier", {{"supplier", {"s_name", "s_nation_key", "s_region"}}}},
      {"Date", {{"day", {"d_date", "d_date_name", "d_month", "d_year"}}}},
      {"Part", {{"part", {"p_brand", "p_name", "p_size", "p_type"}}}},
  };
  return meta;
}

// The workload snapshot as printed, including its quirks: no commas between
// bindings, p_type applied to the Customer variable, and q10 joining Part
// while selecting on Date.
constexpr const char* kSnapshot = R"(
for $x in //FactDoc/Fact,
    $y in //dimensions[@dim-id='Customer']/Level/instance
    $z in //dimensions[@dim-id='Part']/Level/instance
where $y/attribute[@id='c_nation_key']/@value='13'
  and $y/attribute[@id='p_type']/@value='PROMO BURNISHED COPPER'
  and $x/dimension[@dim-id='Customer']/@value-id=$y/@id
  and $x/dimension[@dim-id='Part']/@value-id=$z/@id
return $x

(: id=q10 freq=5 :)
for $x in //FactDoc/Fact,
    $y in //dimensions[@dim-id='Customer']/Level/instance
    $z in //dimensions[@dim-id='Date']/Level/instance
where $y/attribute[@id='c_nation_key']/@value>'15'
  and $y/attribute[@id='d_date_name']/@value='Saturday'
  and $x/dimension[@dim-id='Customer']/@value-id=$y/@id
  and $x/dimension[@dim-id='Part']/@value-id=$z/@id
return $x
)";

ErrorCode CodeOf(std::string_view text, int* line = nullptr) {
  try {
    ParseWorkload(text, XwebMeta());
  } catch (const Error& e) {
    if (line) *line = e.line();
    return e.code();
  }
  ADD_FAILURE() << "parsed without error";
  return ErrorCode::kInvalidArgument;
}

TEST(WorkloadTest, ParsesTheSnapshot) {
  std::vector<std::string> warnings;
  const Workload w = ParseWorkload(kSnapshot, XwebMeta(), &warnings);
  ASSERT_EQ(w.queries.size(), 2u);

  const Query& q1 = w.queries[0];
  EXPECT_EQ(q1.query_id, "q1");
  EXPECT_EQ(q1.frequency, 1u);
  EXPECT_EQ(q1.fact_set(), "sales");
  EXPECT_EQ(q1.selections, (std::vector<SelectionPredicate>{
                               Pred("Customer", "c_nation_key", CompareOp::kEq, "13"),
                               Pred("Part", "p_type", CompareOp::kEq, "PROMO BURNISHED COPPER")}));
  EXPECT_EQ(q1.joins, (std::vector<JoinPredicate>{{"sales", "Customer"}, {"sales", "Part"}}));

  const Query& q10 = w.queries[1];
  EXPECT_EQ(q10.query_id, "q10");
  EXPECT_EQ(q10.frequency, 5u);
  EXPECT_EQ(q10.selections[1], Pred("Date", "d_date_name", CompareOp::kEq, "Saturday"));
  EXPECT_TRUE(q10.JoinsDimension("Part"));
  EXPECT_TRUE(q10.JoinsDimension("Date"));  // added implicitly

  // p_type and d_date_name resolution, the $z rebinding and the implicit join.
  EXPECT_EQ(warnings.size(), 4u);
}

TEST(WorkloadTest, ExtractsTheSnapshotPredicates) {
  const Workload w = ParseWorkload(kSnapshot, XwebMeta());
  const auto p = ExtractSelectionPredicates(w);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0], Pred("Customer", "c_nation_key", CompareOp::kEq, "13"));
  EXPECT_EQ(p[2], Pred("Customer", "c_nation_key", CompareOp::kGt, "15"));

  const auto by_dim = AttributePredicates(p, XwebMeta());
  ASSERT_EQ(by_dim.size(), 3u);
  EXPECT_EQ(by_dim.at("Customer").size(), 2u);
  EXPECT_EQ(by_dim.at("Part").size(), 1u);
  EXPECT_EQ(by_dim.at("Date").size(), 1u);
}

TEST(WorkloadTest, DuplicatesCollapse) {
  const Workload w = ParseWorkload(R"(
for $x in //FactDoc[@id='sales']/Fact, $y in //dimension[@dim-id='Customer']/Level/instance
where $y/attribute[@id='c_nation_key']/@value='13' and $y/attribute[@id='c_nation_key']/@value='13'
  and $x/dimension[@dim-id='Customer']/@value-id=$y/@id and $x/dimension[@dim-id='Customer']/@value-id=$y/@id
return $x
for $x in //FactDoc[@id='sales']/Fact, $y in //dimension[@dim-id='Customer']/Level/instance
where $y/attribute[@id='c_nation_key']/@value='13' and $x/dimension[@dim-id='Customer']/@value-id=$y/@id
return $x)",
                                   XwebMeta());
  EXPECT_EQ(w.queries[0].selections.size(), 1u);
  EXPECT_EQ(w.queries[0].joins.size(), 1u);
  EXPECT_EQ(ExtractSelectionPredicates(w).size(), 1u);
}

TEST(WorkloadTest, LiteralsKeepQuotesAndNumbers) {
  const Workload w = ParseWorkload(R"(
for $x in //FactDoc/Fact, $y in //dimension[@dim-id='Customer']/Level/instance
where $y/attribute[@id='c_name']/@value>='O''Brien' and $y/attribute[@id='c_nation_key']/@value<=15
  and $y/attribute[@id='c_region']/@value!='ASIA'
  and $x/dimension[@dim-id='Customer']/@value-id=$y/@id
return $x)",
                                   XwebMeta());
  const auto& s = w.queries[0].selections;
  EXPECT_EQ(s[0], Pred("Customer", "c_name", CompareOp::kGe, "O'Brien"));
  EXPECT_EQ(s[1], Pred("Customer", "c_nation_key", CompareOp::kLe, "15"));
  EXPECT_EQ(s[2], Pred("Customer", "c_region", CompareOp::kNe, "ASIA"));
}

TEST(WorkloadTest, PrintParseRoundTrip) {
  const Workload w = ParseWorkload(kSnapshot, XwebMeta());
  const Workload again = ParseWorkload(PrintWorkload(w), XwebMeta());
  EXPECT_EQ(again, w);
  EXPECT_EQ(PrintWorkload(again), PrintWorkload(w));

  for (const char* preset : {"config1", "config2"}) {
    const GeneratedConfig g = GeneratePreset(FindPreset(preset), 3);
    std::vector<std::string> warnings;
    EXPECT_EQ(ParseWorkload(PrintWorkload(g.workload), g.warehouse.meta, &warnings), g.workload);
    EXPECT_TRUE(warnings.empty());
  }
}

TEST(WorkloadTest, SyntaxErrorsCarryPositions) {
  int line = 0;
  EXPECT_EQ(CodeOf("for $x in //FactDoc/Fact\nwhere $x/dimension[@dim-id='Customer']/@value-id=$y/@id\nreturn", &line),
            ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf("for $x in //Nowhere/Fact where", &line), ErrorCode::kSyntaxError);
  EXPECT_EQ(line, 1);
  EXPECT_EQ(CodeOf("for $x in //FactDoc/Fact,\n $y in //dimension[@dim-id='Customer']/Level/instance\n"
                   "where $y/attribute[@id='c_nation_key']/@value ~ '1'\n"
                   "  and $x/dimension[@dim-id='Customer']/@value-id=$y/@id return $x",
                   &line),
            ErrorCode::kSyntaxError);
  EXPECT_EQ(line, 3);
}

TEST(WorkloadTest, QueriesNeedAJoin) {
  EXPECT_EQ(CodeOf("for $x in //FactDoc/Fact, $y in //dimension[@dim-id='Customer']/Level/instance\n"
                   "where $y/attribute[@id='c_nation_key']/@value='1' return $x"),
            ErrorCode::kSyntaxError);
}

TEST(WorkloadTest, UnsupportedRightHandSides) {
  const std::string head =
      "for $x in //FactDoc/Fact, $y in //dimension[@dim-id='Customer']/Level/instance\nwhere "
      "$y/attribute[@id='c_nation_key']/@value=";
  const std::string tail = " and $x/dimension[@dim-id='Customer']/@value-id=$y/@id return $x";
  EXPECT_EQ(CodeOf(head + "$y/@id" + tail), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf(head + "max('1')" + tail), ErrorCode::kSyntaxError);
}

TEST(WorkloadTest, UnknownNames) {
  EXPECT_EQ(CodeOf("for $x in //FactDoc/Fact, $y in //dimension[@dim-id='Store']/Level/instance\n"
                   "where $y/attribute[@id='c_name']/@value='1' and $x/dimension[@dim-id='Store']/@value-id=$y/@id "
                   "return $x"),
            ErrorCode::kUnknownDimension);
  EXPECT_EQ(CodeOf("for $x in //FactDoc/Fact, $y in //dimension[@dim-id='Customer']/Level/instance\n"
                   "where $y/attribute[@id='c_phone']/@value='1' and $x/dimension[@dim-id='Customer']/@value-id=$y/@id "
                   "return $x"),
            ErrorCode::kUnknownAttribute);
  EXPECT_THROW(AttributePredicates({Pred("Store", "x", CompareOp::kEq, "1")}, XwebMeta()), Error);
  EXPECT_THROW(AttributePredicates({Pred("Customer", "x", CompareOp::kEq, "1")}, XwebMeta()), Error);
}

TEST(WorkloadTest, DuplicateQueryIds) {
  const std::string q =
      "(: id=a :) for $x in //FactDoc/Fact, $y in //dimension[@dim-id='Customer']/Level/instance\n"
      "where $x/dimension[@dim-id='Customer']/@value-id=$y/@id return $x\n";
  EXPECT_EQ(CodeOf(q + q), ErrorCode::kSyntaxError);
}

TEST(WorkloadTest, EmptyWorkload) {
  EXPECT_TRUE(ParseWorkload("  (: nothing here :)\n", XwebMeta()).queries.empty());
}

}  // namespace
}  // namespace xwfrag
