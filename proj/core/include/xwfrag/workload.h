#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xwfrag/value.h"
#include "xwfrag/warehouse.h"

namespace xwfrag {

// attribute θ literal on one dimension. Ordering is (dim_id, attribute, op, rhs).
struct SelectionPredicate {
  std::string dim_id;
  std::string attribute;
  CompareOp op = CompareOp::kEq;
  std::string rhs;

  bool Evaluate(const Instance& instance) const {
    return EvaluateComparison(instance.AttributeOrEmpty(attribute), op, rhs);
  }
  SelectionPredicate Negated() const { return {dim_id, attribute, Negate(op), rhs}; }

  auto operator<=>(const SelectionPredicate&) const = default;
  bool operator==(const SelectionPredicate&) const = default;
};

// attribute[@id='a']/@value θ 'lit', quoting the literal XQuery-style.
std::string PredicateText(const SelectionPredicate& p);
// "Customer.c_nation_key > '15'" for reports and diagnostics.
std::string DescribePredicate(const SelectionPredicate& p);
std::string QuoteLiteral(std::string_view literal);

struct JoinPredicate {
  std::string fact_set;
  std::string dim_id;

  bool operator==(const JoinPredicate&) const = default;
};

struct Query {
  std::string query_id;
  std::vector<SelectionPredicate> selections;
  std::vector<JoinPredicate> joins;
  uint64_t frequency = 1;

  const std::string& fact_set() const { return joins.front().fact_set; }
  bool JoinsDimension(const std::string& dim_id) const;
  std::vector<SelectionPredicate> SelectionsOn(const std::string& dim_id) const;

  bool operator==(const Query&) const = default;
};

struct Workload {
  std::vector<Query> queries;

  const Query* Find(const std::string& query_id) const;

  bool operator==(const Workload&) const = default;
};

// Parses the FLWOR workload language:
//
//   (: id=q1 freq=10 :)
//   for $x in //FactDoc/Fact,
//       $y in //dimensions[@dim-id='Customer']/Level/instance
//   where $y/attribute[@id='c_nation_key']/@value > '15'
//     and $x/dimension[@dim-id='Customer']/@value-id = $y/@id
//   return $x
//
// The pragma is optional (id defaults to q<n>, freq to 1). A selection's
// dimension is the one whose metadata declares the attribute; when that
// disagrees with the variable binding, or a selected dimension is never
// joined, the parser repairs the query and appends a warning. Throws
// SyntaxError (with line/column), UnknownDimension or UnknownAttribute.
Workload ParseWorkload(std::string_view text, const WarehouseMeta& meta,
                       std::vector<std::string>* warnings = nullptr);

std::string PrintWorkload(const Workload& workload);

// The predicate set P: first-occurrence order, duplicates merged.
std::vector<SelectionPredicate> ExtractSelectionPredicates(const Workload& workload);

// dim_id -> P_d. Only candidate dimensions (nonempty P_d) appear.
// Throws UnknownDimension/UnknownAttribute for unresolvable predicates.
std::map<std::string, std::vector<SelectionPredicate>> AttributePredicates(
    const std::vector<SelectionPredicate>& predicates, const WarehouseMeta& meta);

}  // namespace xwfrag
