#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xwfrag/xml.h"

namespace xwfrag {

// ---------------------------------------------------------------------------
// Metadata (dw-model.xml)
// ---------------------------------------------------------------------------

struct FactSetMeta {
  std::string name;
  std::vector<std::string> measures;
  std::vector<std::string> dim_refs;

  bool operator==(const FactSetMeta&) const = default;
};

struct LevelMeta {
  std::string level_id;
  std::vector<std::string> attributes;

  bool operator==(const LevelMeta&) const = default;
};

struct DimensionMeta {
  std::string dim_id;
  std::vector<LevelMeta> levels;

  bool HasAttribute(const std::string& attribute) const;
  std::vector<std::string> AllAttributes() const;

  bool operator==(const DimensionMeta&) const = default;
};

struct WarehouseMeta {
  std::vector<FactSetMeta> fact_sets;
  std::vector<DimensionMeta> dimensions;

  const DimensionMeta* FindDimension(const std::string& dim_id) const;
  const FactSetMeta* FindFactSet(const std::string& name) const;

  bool operator==(const WarehouseMeta&) const = default;
};

// ---------------------------------------------------------------------------
// Dimension documents (dimension_<dim>.xml)
// ---------------------------------------------------------------------------

struct Instance {
  std::string instance_id;
  std::map<std::string, std::string> attributes;
  std::optional<std::string> roll_up;
  std::optional<std::string> drill_down;

  // Missing attributes read as the empty string so that a predicate and its
  // complement stay mutually exclusive on every instance.
  const std::string& AttributeOrEmpty(const std::string& attribute) const;

  bool operator==(const Instance&) const = default;
};

struct Level {
  std::string level_id;
  std::vector<Instance> instances;

  bool operator==(const Level&) const = default;
};

struct DimensionDoc {
  std::string dim_id;
  std::vector<Level> levels;

  size_t InstanceCount() const;
  // Instances of all levels, in document order.
  std::vector<const Instance*> AllInstances() const;

  bool operator==(const DimensionDoc&) const = default;
};

// ---------------------------------------------------------------------------
// Fact documents (facts_<name>.xml)
// ---------------------------------------------------------------------------

struct Fact {
  std::string fact_id;
  std::map<std::string, double> measures;
  std::map<std::string, std::string> dim_refs;  // dim_id -> instance_id

  bool operator==(const Fact&) const = default;
};

struct FactDoc {
  std::string fact_set;
  std::vector<Fact> facts;

  bool operator==(const FactDoc&) const = default;
};

struct Warehouse {
  WarehouseMeta meta;
  std::vector<FactDoc> facts;
  std::map<std::string, DimensionDoc> dimensions;

  const FactDoc* FindFacts(const std::string& fact_set) const;

  bool operator==(const Warehouse&) const = default;
};

struct Violation {
  std::string location;  // e.g. "facts_sales.xml/Fact[f12]"
  std::string message;

  bool operator==(const Violation&) const = default;
};

// File names used on disk.
std::string FactsFileName(const std::string& fact_set);
std::string DimensionFileName(const std::string& dim_id);
inline constexpr const char* kModelFileName = "dw-model.xml";

// XML <-> model. Element shapes:
//   <FactDoc id><Fact id><measure name value/><dimension dim-id value-id/></Fact></FactDoc>
//   <dimension dim-id><Level id><instance id [Roll-up] [Drill-Down]>
//     <attribute id value/></instance></Level></dimension>
//   <dw-model><factSet id><measure id/><dimension idref/></factSet>
//     <dimension id><Level id><attribute id/></Level></dimension></dw-model>
XmlElement ModelToXml(const WarehouseMeta& meta);
WarehouseMeta ModelFromXml(const XmlElement& root);
XmlElement FactDocToXml(const FactDoc& facts);
FactDoc FactDocFromXml(const XmlElement& root);
XmlElement DimensionToXml(const DimensionDoc& dimension);
DimensionDoc DimensionFromXml(const XmlElement& root);

// Reads dw-model.xml, every fact set's facts document and every dimension
// document. Throws MissingDocument, MalformedXml or IntegrityViolation.
Warehouse ParseWarehouse(const std::filesystem::path& dir);

// Loads only the named dimension documents plus the facts of `fact_set`
// (used by cold-cache query timing). Performs no integrity validation.
Warehouse LoadWarehousePartial(const std::filesystem::path& dir, const std::string& fact_set,
                               const std::vector<std::string>& dim_ids);

// Creates `dir` if needed. Throws IoError.
void SerializeWarehouse(const Warehouse& warehouse, const std::filesystem::path& dir);

// Dangling fact references (unknown dim_id or instance_id) and dangling or
// non-adjacent Roll-up/Drill-Down links.
std::vector<Violation> ValidateReferentialIntegrity(const Warehouse& warehouse);

// Referential integrity plus the structural invariants: unique ids, unique
// attribute names, attributes/measures/dim refs declared in the metadata.
std::vector<Violation> ValidateWarehouse(const Warehouse& warehouse);

struct GenSpec {
  uint64_t n_facts = 0;
  std::map<std::string, uint64_t> dim_sizes;  // keys from Customer/Supplier/Date/Part
  uint64_t seed = 0;
  // Seeds the fact stream separately when set; dimensions always use `seed`.
  std::optional<uint64_t> fact_seed;
};

// XWeB-shaped synthetic warehouse: one "sales" fact set with amount and
// quantity measures over Customer, Supplier, Date and Part (only the
// dimensions listed in dim_sizes). Dimension contents depend on the seed and
// sizes only, so warehouses that differ in n_facts share dimensions.
// Throws InvalidSpec.
Warehouse GenerateWarehouse(const GenSpec& spec);

}  // namespace xwfrag
