#include "xwfrag/warehouse.h"

#include <gtest/gtest.h>

#include <functional>

#include "test_util.h"
#include "xwfrag/error.h"

namespace xwfrag {
namespace {

namespace fs = std::filesystem;
using testing::MakeInstance;
using testing::SmallWarehouse;
using testing::TempDir;

const fs::path kGolden = fs::path(XWFRAG_TEST_DATA) / "golden";

// Customer with a two-level hierarchy (customer -> nation).
Warehouse HierarchyWarehouse() {
  Warehouse w = SmallWarehouse();
  w.meta.dimensions[0].levels.push_back({"nation", {"n_name"}});
  auto& customer = w.dimensions.at("Customer");
  Level nation{"nation", {MakeInstance("n13", {{"n_name", "JAPAN"}})}};
  nation.instances[0].drill_down = "c1";
  customer.levels.push_back(nation);
  customer.levels[0].instances[0].roll_up = "n13";
  return w;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(WarehouseTest, SerializationMatchesGoldenFiles) {
  TempDir dir;
  SerializeWarehouse(SmallWarehouse(), dir.path());
  for (const char* name : {"dw-model.xml", "facts_sales.xml", "dimension_Customer.xml", "dimension_Part.xml"}) {
    EXPECT_EQ(ReadFile(dir.path() / name), ReadFile(kGolden / name)) << name;
  }
}

TEST(WarehouseTest, GoldenFilesParseToTheFixture) {
  TempDir dir;
  for (const char* name : {"dw-model.xml", "facts_sales.xml", "dimension_Customer.xml", "dimension_Part.xml"}) {
    fs::copy_file(kGolden / name, dir.path() / name);
  }
  EXPECT_EQ(ParseWarehouse(dir.path()), SmallWarehouse());
}

TEST(WarehouseTest, ParseSerializeIdentity) {
  for (const Warehouse& w : {SmallWarehouse(), HierarchyWarehouse()}) {
    TempDir a, b;
    SerializeWarehouse(w, a.path());
    const Warehouse parsed = ParseWarehouse(a.path());
    EXPECT_EQ(parsed, w);
    SerializeWarehouse(parsed, b.path());
    for (const auto& entry : fs::directory_iterator(a.path())) {
      EXPECT_EQ(ReadFile(entry.path()), ReadFile(b.path() / entry.path().filename()));
    }
  }
}

TEST(WarehouseTest, MeasuresKeepShortestExactForm) {
  Warehouse w = SmallWarehouse();
  w.facts[0].facts[0].measures["amount"] = 0.1;
  w.facts[0].facts[1].measures["amount"] = 123456.789;
  TempDir dir;
  SerializeWarehouse(w, dir.path());
  const std::string facts = ReadFile(dir.path() / "facts_sales.xml");
  EXPECT_NE(facts.find("value=\"0.1\""), std::string::npos);
  EXPECT_NE(facts.find("value=\"123456.789\""), std::string::npos);
  EXPECT_EQ(ParseWarehouse(dir.path()), w);
}

TEST(WarehouseTest, MissingDocument) {
  TempDir dir;
  SerializeWarehouse(SmallWarehouse(), dir.path());
  fs::remove(dir.path() / "dimension_Part.xml");
  EXPECT_EQ(CodeOf([&] { ParseWarehouse(dir.path()); }), ErrorCode::kMissingDocument);
}

TEST(WarehouseTest, MalformedDocumentCarriesLine) {
  TempDir dir;
  SerializeWarehouse(SmallWarehouse(), dir.path());
  WriteFile(dir.path() / "dimension_Part.xml", "<dimension dim-id=\"Part\">\n  <Level id=\"part\">\n</dimension>\n");
  try {
    ParseWarehouse(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedXml);
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(WarehouseTest, DanglingFactReferenceIsAnIntegrityViolation) {
  Warehouse w = SmallWarehouse();
  w.facts[0].facts[2].dim_refs["Customer"] = "c99";
  const auto violations = ValidateReferentialIntegrity(w);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].location.find("f3"), std::string::npos);

  TempDir dir;
  SerializeWarehouse(w, dir.path());
  EXPECT_EQ(CodeOf([&] { ParseWarehouse(dir.path()); }), ErrorCode::kIntegrityViolation);
}

TEST(WarehouseTest, ReferenceToUnknownDimension) {
  Warehouse w = SmallWarehouse();
  w.facts[0].facts[0].dim_refs["Store"] = "s1";
  EXPECT_FALSE(ValidateReferentialIntegrity(w).empty());
}

TEST(WarehouseTest, HierarchyLinksMustBeAdjacentLevels) {
  Warehouse w = HierarchyWarehouse();
  EXPECT_TRUE(ValidateWarehouse(w).empty());

  Warehouse dangling = w;
  dangling.dimensions.at("Customer").levels[0].instances[1].roll_up = "n99";
  EXPECT_EQ(ValidateReferentialIntegrity(dangling).size(), 1u);

  Warehouse wrong_level = w;
  // A customer rolling up to another customer skips no level but goes nowhere.
  wrong_level.dimensions.at("Customer").levels[0].instances[1].roll_up = "c3";
  EXPECT_EQ(ValidateReferentialIntegrity(wrong_level).size(), 1u);

  Warehouse wrong_drill = w;
  wrong_drill.dimensions.at("Customer").levels[1].instances[0].drill_down = "n13";
  EXPECT_EQ(ValidateReferentialIntegrity(wrong_drill).size(), 1u);
}

TEST(WarehouseTest, StructuralChecks) {
  Warehouse w = SmallWarehouse();
  w.dimensions.at("Part").levels[0].instances[1].instance_id = "p1";
  w.dimensions.at("Customer").levels[0].instances[0].attributes["c_phone"] = "555";
  w.facts[0].facts[0].measures["discount"] = 1;
  // The renamed part also leaves f3 pointing at a missing p2.
  EXPECT_EQ(ValidateWarehouse(w).size(), 4u);
}

TEST(WarehouseTest, PartialLoadReadsOnlyRequestedDocuments) {
  TempDir dir;
  SerializeWarehouse(SmallWarehouse(), dir.path());
  fs::remove(dir.path() / "dimension_Part.xml");
  const Warehouse w = LoadWarehousePartial(dir.path(), "sales", {"Customer"});
  EXPECT_EQ(w.facts.size(), 1u);
  EXPECT_EQ(w.facts[0].facts.size(), 5u);
  EXPECT_EQ(w.dimensions.size(), 1u);
  EXPECT_EQ(w.dimensions.at("Customer").InstanceCount(), 4u);
}

TEST(WarehouseTest, MissingAttributeReadsAsEmpty) {
  const Instance inst = MakeInstance("x", {{"a", "1"}});
  EXPECT_EQ(inst.AttributeOrEmpty("a"), "1");
  EXPECT_EQ(inst.AttributeOrEmpty("b"), "");
}

}  // namespace
}  // namespace xwfrag
