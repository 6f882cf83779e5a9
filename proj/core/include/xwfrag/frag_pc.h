#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "xwfrag/condition.h"
#include "xwfrag/warehouse.h"
#include "xwfrag/workload.h"

namespace xwfrag {

struct SignedPredicate {
  SelectionPredicate predicate;
  bool positive = true;

  // The predicate itself, or its complement (¬> is ≤, ¬= is ≠, ...).
  SelectionPredicate Effective() const { return positive ? predicate : predicate.Negated(); }

  bool operator==(const SignedPredicate&) const = default;
};

struct Minterm {
  std::vector<SignedPredicate> conjuncts;

  Condition ToCondition() const;
  bool Evaluate(const Instance& instance) const;

  bool operator==(const Minterm&) const = default;
};

// One horizontal fragment of a dimension. `predicate` is the condition that
// selects exactly `instance_ids` from the original dimension.
struct DimensionFragment {
  std::string fragment_id;
  std::string dim_id;
  Condition predicate;
  std::set<std::string> instance_ids;

  bool operator==(const DimensionFragment&) const = default;
};

struct DimensionFragmentation {
  std::vector<DimensionFragment> fragments;
  // Ids and predicates of fragments that matched no instance.
  std::vector<std::string> dropped_empty;
};

inline constexpr size_t kMaxMintermPredicates = 20;

// Complete and minimal subset of `predicates` with respect to the partition
// they induce on `dim`'s instances. Greedy fixed-point elimination in input
// order, then (up to kMaxMintermPredicates predicates) an exact search for a
// smaller subset inducing the same partition. Output keeps input order.
std::vector<SelectionPredicate> ComMin(std::span<const SelectionPredicate> predicates, const DimensionDoc& dim);

// All satisfiable sign assignments, positive branch first. Throws
// TooManyPredicates above kMaxMintermPredicates.
std::vector<Minterm> GenerateMinterms(std::span<const SelectionPredicate> predicates);

// Fragment i collects the instances satisfying minterm i; ids are
// "<dim>_m<i+1>" so they stay stable when empty minterms are dropped.
DimensionFragmentation FragmentDimensionPc(const DimensionDoc& dim, std::span<const Minterm> minterms);

}  // namespace xwfrag
