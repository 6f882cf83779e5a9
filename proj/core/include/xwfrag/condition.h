#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xwfrag/warehouse.h"
#include "xwfrag/workload.h"

namespace xwfrag {

// Boolean formula over selection predicates on one dimension. Minterms are
// conjunctions of (possibly negated) predicates, affinity-based fragments add
// per-attribute disjunctions and negated terms.
class Condition {
 public:
  enum class Kind { kTrue, kAtom, kNot, kAnd, kOr };

  Condition() = default;  // true

  static Condition True() { return Condition(); }
  static Condition Atom(SelectionPredicate predicate);
  static Condition Not(Condition operand);
  // Single-element and/or collapse to the element; empty And is true, empty
  // Or is false (represented as Not(True)).
  static Condition And(std::vector<Condition> operands);
  static Condition Or(std::vector<Condition> operands);
  static Condition AllOf(std::span<const SelectionPredicate> predicates);
  static Condition AnyOf(std::span<const SelectionPredicate> predicates);

  Kind kind() const { return kind_; }
  const SelectionPredicate& atom() const { return atom_; }
  const std::vector<Condition>& operands() const { return operands_; }

  bool Evaluate(const Instance& instance) const;

  // Top-level conjuncts: the operands of an And, else {*this}.
  std::vector<Condition> Conjuncts() const;
  // Every atom in the formula, in traversal order.
  std::vector<SelectionPredicate> Atoms() const;

  // e.g. "attribute[@id='a']/@value='1' and not (attribute[@id='b']/@value>'2')"
  std::string ToString() const;

  bool operator==(const Condition&) const = default;

 private:
  Kind kind_ = Kind::kTrue;
  SelectionPredicate atom_;
  std::vector<Condition> operands_;
};

// Inverse of Condition::ToString. Atoms take `dim_id`; an optional "$var/"
// prefix on atoms is accepted. Throws SyntaxError.
Condition ParseCondition(std::string_view text, const std::string& dim_id);

// Exact satisfiability under the value semantics of CompareValues: a value
// that parses as a decimal compares numerically against decimal literals and
// lexicographically against everything else. Literals split each attribute's
// value space into finitely many regions (points and open intervals, per
// numeric and non-numeric world); the formula is evaluated on every
// combination of regions with three-valued logic. "Unknown" (a numeric value
// compared lexicographically with a literal whose first byte lies inside the
// numeric alphabet) counts as satisfiable, so a false result is always a
// proof of unsatisfiability.
bool IsSatisfiable(const Condition& condition);
bool IsSatisfiable(std::span<const SelectionPredicate> conjunction);

// p implies q, i.e. p and not q is unsatisfiable.
bool Implies(const SelectionPredicate& p, const SelectionPredicate& q);

}  // namespace xwfrag
