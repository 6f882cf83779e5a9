#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xwfrag/frag_ab.h"
#include "xwfrag/frag_pc.h"
#include "xwfrag/warehouse.h"
#include "xwfrag/workload.h"

namespace xwfrag {

enum class Method { kPc, kAb };

const char* MethodName(Method method);  // "PC" / "AB"
// Accepts pc/PC/ab/AB. Throws InvalidArgument.
Method ParseMethod(std::string_view text);

// A fact fragment with the dimension fragments that define it. A fact
// belongs to fact_ids iff each of its references to a fragmented dimension
// lands in the corresponding dim_parts entry.
struct WarehouseFragment {
  std::string fragment_id;
  std::map<std::string, DimensionFragment> dim_parts;
  std::set<std::string> fact_ids;
};

struct SchemaFragment {
  std::string fragment_id;
  // dimension -> top-level conjuncts of its fragment predicate
  std::map<std::string, std::vector<Condition>> predicates;

  Condition DimensionCondition(const std::string& dim_id) const;

  bool operator==(const SchemaFragment&) const = default;
};

struct FragmentationSchema {
  Method method = Method::kPc;
  std::vector<SchemaFragment> fragments;

  bool operator==(const FragmentationSchema&) const = default;
};

// Per-dimension working state, kept for reports and matrix dumps.
struct DimensionReport {
  std::string dim_id;
  std::vector<SelectionPredicate> predicates;  // P_d, sorted
  std::vector<SelectionPredicate> reduced;     // PC: COM-MIN output
  size_t n_minterms = 0;                       // PC
  std::optional<PredicateUsageMatrix> pum;     // AB
  std::optional<AffinityMatrix> affinity;      // AB
  std::optional<ClusteringResult> clustering;  // AB
  size_t n_terms = 0;                          // AB
  DimensionFragmentation fragmentation;
};

struct FragmentationResult {
  Method method = Method::kPc;
  std::string fact_set;
  std::vector<DimensionReport> dimensions;  // sorted by dim_id
  std::vector<WarehouseFragment> fragments;
  FragmentationSchema schema;
};

inline constexpr const char* kSchemaFileName = "fragmentation_schema.xml";

// Cartesian grid over the fragmented dimensions (sorted by id), empty cells
// dropped, ids f1, f2, ... in tuple order. Throws IntegrityViolation when a
// fact lacks a reference to a fragmented dimension or references an instance
// no fragment holds.
std::vector<WarehouseFragment> FragmentFacts(
    const FactDoc& facts, const std::map<std::string, std::vector<DimensionFragment>>& dim_fragments);

FragmentationSchema MakeSchema(Method method, const std::vector<WarehouseFragment>& fragments);

// Full pipeline on an in-memory warehouse holding exactly one fact set.
// Throws InvalidArgument ("no candidate dimensions") when the workload selects
// nothing on that fact set's dimensions.
FragmentationResult FragmentWarehouse(const Warehouse& warehouse, const Workload& workload, Method method);

// <Schema method="PC"><fragment id><dimension name><predicate>text</predicate>...
XmlElement SchemaToXml(const FragmentationSchema& schema);
FragmentationSchema SchemaFromXml(const XmlElement& root);
FragmentationSchema LoadSchema(const std::filesystem::path& path);

// The fragment as a standalone warehouse: its facts, its share of each
// fragmented dimension, every other dimension whole. Hierarchy links to
// instances outside the fragment are dropped.
Warehouse BuildFragmentWarehouse(const Warehouse& warehouse, const WarehouseFragment& fragment);

// Writes <out>/fragmentation_schema.xml and <out>/<fragment_id>/ collections.
// Documents shared by every collection are written once and hard-linked
// (copied when linking fails). Stale collections from a previous run are
// removed. Throws IoError.
void MaterializeFragments(const Warehouse& warehouse, const FragmentationResult& result,
                          const std::filesystem::path& out);

// Completeness and disjointness of every dimension and of the facts,
// predicate fidelity of the schema (re-parsed from its XML form) against the
// original warehouse, and the semi-join membership rule.
std::vector<Violation> VerifyFragmentation(const Warehouse& warehouse, const FragmentationResult& result);

}  // namespace xwfrag
