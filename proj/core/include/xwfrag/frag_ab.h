#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xwfrag/condition.h"
#include "xwfrag/frag_pc.h"
#include "xwfrag/workload.h"

namespace xwfrag {

// Rows are queries, columns index the predicate set the matrix was built for.
struct PredicateUsageMatrix {
  std::vector<std::string> query_ids;
  std::vector<std::vector<bool>> cells;  // [query][predicate]
  std::vector<uint64_t> freq;
  size_t n_predicates = 0;
};

struct AffinityCell {
  enum class Kind { kNumeric, kImplies, kImpliedBy, kSimilar };

  Kind kind = Kind::kNumeric;
  // Frequency sum of queries using both predicates, kept for every kind.
  uint64_t value = 0;

  bool operator==(const AffinityCell&) const = default;
};

struct AffinityMatrix {
  std::vector<std::vector<AffinityCell>> cells;

  size_t size() const { return cells.size(); }
  const AffinityCell& at(size_t i, size_t j) const { return cells[i][j]; }

  bool operator==(const AffinityMatrix&) const = default;
};

struct PredicateCycle {
  std::string cycle_id;
  std::vector<size_t> members;  // ascending predicate indices

  bool operator==(const PredicateCycle&) const = default;
};

struct ClusteringResult {
  std::vector<PredicateCycle> cycles;
  std::vector<size_t> unclustered;

  bool operator==(const ClusteringResult&) const = default;
};

struct SchematicTable {
  std::vector<std::string> attributes;  // sorted
  std::vector<std::vector<bool>> cells;  // [cycle][attribute]
};

// Conjunction of one predicate per attribute of the schematic table.
struct PredicateTerm {
  std::vector<SelectionPredicate> conjuncts;
  std::string source_cycle;

  Condition ToCondition() const { return Condition::AllOf(conjuncts); }

  bool operator==(const PredicateTerm&) const = default;
};

struct TermComposition {
  std::vector<PredicateTerm> terms;
  Condition else_predicate;  // not (t1 or ... or tk); true when k = 0
};

PredicateUsageMatrix BuildPum(const Workload& workload, std::span<const SelectionPredicate> predicates);

// Implies/ImpliedBy for same-attribute entailment, Similar for same-attribute
// predicates co-used with a common predicate on another attribute, Numeric
// otherwise.
AffinityMatrix BuildAffinity(const PredicateUsageMatrix& pum, std::span<const SelectionPredicate> predicates);

// Predicates related by a non-numeric cell are merged into one node first.
// Each round seeds a path with the heaviest remaining edge and grows it from
// either end by the heaviest incident edge. An edge back into the path closes
// a cycle whose strength is its weakest edge; afterwards the cycle absorbs
// nodes only over edges at least that strong, and the first weaker extension
// cuts it. Emitted clusters leave the graph. Leftover nodes join the cluster
// they are most affine to.
ClusteringResult ClusterPredicates(const AffinityMatrix& affinity);

SchematicTable BuildSchematicTable(std::span<const PredicateCycle> cycles, std::span<const SelectionPredicate> predicates);

// One term per element of the cartesian product over the table's attributes:
// on attributes the cycle covers, one of its own predicates (several when
// merged related predicates share the attribute); on attributes it lacks,
// any predicate of the set on that attribute.
TermComposition ComposePredicateTerms(const SchematicTable& table, std::span<const PredicateCycle> cycles,
                                      std::span<const SelectionPredicate> predicates);

// First-match assignment. Fragment i's stored predicate is t_i and not every
// earlier term that overlaps it, so it selects exactly its members. Ids are
// "<dim>_t<i+1>" and "<dim>_else".
DimensionFragmentation FragmentDimensionAb(const DimensionDoc& dim, const TermComposition& composition);

std::string PumToCsv(const PredicateUsageMatrix& pum);
std::string AffinityToCsv(const AffinityMatrix& affinity, std::span<const SelectionPredicate> predicates);

}  // namespace xwfrag
