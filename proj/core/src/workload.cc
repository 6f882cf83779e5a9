#include "xwfrag/workload.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "scanner.h"
#include "xwfrag/error.h"

namespace xwfrag {
namespace {

using internal::Scanner;


struct Pragma {
  std::optional<std::string> id;
  std::optional<uint64_t> freq;
};

std::optional<Pragma> ParsePragma(const std::string& body, Scanner& scanner) {
  Pragma pragma;
  bool any = false;
  std::string normalized = body;
  // Allow "freq = 10" as well as "freq=10".
  for (size_t eq = normalized.find('='); eq != std::string::npos; eq = normalized.find('=', eq + 1)) {
    while (eq > 0 && normalized[eq - 1] == ' ') {
      normalized.erase(eq - 1, 1);
      --eq;
    }
    while (eq + 1 < normalized.size() && normalized[eq + 1] == ' ') normalized.erase(eq + 1, 1);
  }
  std::istringstream in(normalized);
  std::string item;
  while (in >> item) {
    const size_t eq = item.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "id") {
      if (value.empty()) scanner.Fail("empty query id in pragma");
      pragma.id = value;
      any = true;
    } else if (key == "freq") {
      if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        scanner.Fail("query frequency must be a positive integer, got '" + value + "'");
      }
      pragma.freq = std::stoull(value);
      if (*pragma.freq == 0) scanner.Fail("query frequency must be positive");
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return pragma;
}

struct RawSelection {
  std::string var;
  std::string attribute;
  CompareOp op;
  std::string rhs;
  int line, column;
};

struct RawJoin {
  std::string fact_var;
  std::string dim_id;
  std::string dim_var;
  int line, column;
};

struct Binding {
  bool is_fact = false;
  std::string target;  // fact set (may be empty) or dimension id
};

Query ParseBlock(Scanner& s, const WarehouseMeta& meta, const Pragma& pragma, size_t ordinal,
                 std::vector<std::string>* warnings) {
  const int block_line = s.line();
  s.Expect("for");
  std::map<std::string, Binding> bindings;
  std::string fact_var;
  do {
    const std::string var = s.Variable();
    s.Expect("in");
    s.Expect("//");
    const std::string root = s.Identifier();
    Binding b;
    if (root == "FactDoc") {
      b.is_fact = true;
      if (s.TryConsume("[")) {
        s.Expect("@");
        s.Expect("id");
        s.Expect("=");
        b.target = s.Literal();
        s.Expect("]");
      }
      s.Expect("/");
      s.Expect("Fact");
      if (!fact_var.empty()) s.Fail("only one fact variable may be bound");
      fact_var = var;
    } else if (root == "dimension" || root == "dimensions") {
      s.Expect("[");
      s.Expect("@");
      s.Expect("dim-id");
      s.Expect("=");
      b.target = s.Literal();
      s.Expect("]");
      s.Expect("/");
      s.Expect("Level");
      s.Expect("/");
      s.Expect("instance");
    } else {
      s.Fail("unsupported path root '//" + root + "'");
    }
    if (!bindings.emplace(var, b).second) s.Fail("variable $" + var + " bound twice");
    // Bindings are comma-separated; a bare line break is tolerated too.
  } while (s.TryConsume(",") || s.Peek() == '$');
  if (fact_var.empty()) s.Fail("no variable is bound to //FactDoc/Fact");

  s.Expect("where");
  std::vector<RawSelection> selections;
  std::vector<RawJoin> joins;
  do {
    const int line = s.line(), column = s.column();
    const std::string var = s.Variable();
    s.Expect("/");
    if (s.TryConsume("attribute")) {
      s.Expect("[");
      s.Expect("@");
      s.Expect("id");
      s.Expect("=");
      std::string attribute = s.Literal();
      s.Expect("]");
      s.Expect("/");
      s.Expect("@");
      s.Expect("value");
      auto op = s.TryOperator();
      if (!op) s.Fail("expected a comparison operator");
      const char next = s.Peek();
      if (next == '$' || next == '/') s.Fail("path-valued right-hand sides are not supported");
      if (s.PeekFunctionCall()) s.Fail("function calls are not supported in predicates");
      selections.push_back({var, std::move(attribute), *op, s.Literal(), line, column});
    } else if (s.TryConsume("dimension")) {
      s.Expect("[");
      s.Expect("@");
      s.Expect("dim-id");
      s.Expect("=");
      std::string dim_id = s.Literal();
      s.Expect("]");
      s.Expect("/");
      s.Expect("@");
      s.Expect("value-id");
      s.Expect("=");
      std::string dim_var = s.Variable();
      s.Expect("/");
      s.Expect("@");
      s.Expect("id");
      joins.push_back({var, std::move(dim_id), std::move(dim_var), line, column});
    } else {
      s.Fail("expected attribute[...] or dimension[...] after $" + var + "/");
    }
  } while (s.TryConsume("and"));
  s.Expect("return");
  s.Variable();

  Query q;
  q.query_id = pragma.id.value_or("q" + std::to_string(ordinal));
  q.frequency = pragma.freq.value_or(1);
  auto warn = [&](const std::string& message) {
    if (warnings) warnings->push_back(q.query_id + ": " + message);
  };

  if (joins.empty()) {
    throw Error(ErrorCode::kSyntaxError, "query " + q.query_id + " has no join condition", block_line, 1);
  }

  for (const auto& raw : selections) {
    auto it = bindings.find(raw.var);
    if (it == bindings.end()) throw Error(ErrorCode::kSyntaxError, "unbound variable $" + raw.var, raw.line, raw.column);
    if (it->second.is_fact) {
      throw Error(ErrorCode::kSyntaxError, "selection on fact variable $" + raw.var, raw.line, raw.column);
    }
    const std::string& bound_dim = it->second.target;
    const DimensionMeta* dim = meta.FindDimension(bound_dim);
    if (dim == nullptr) {
      throw Error(ErrorCode::kUnknownDimension, "unknown dimension '" + bound_dim + "'", raw.line, raw.column);
    }
    std::string resolved = bound_dim;
    if (!dim->HasAttribute(raw.attribute)) {
      const DimensionMeta* owner = nullptr;
      for (const auto& d : meta.dimensions) {
        if (d.HasAttribute(raw.attribute)) {
          owner = &d;
          break;
        }
      }
      if (owner == nullptr) {
        throw Error(ErrorCode::kUnknownAttribute, "no dimension declares attribute '" + raw.attribute + "'",
                    raw.line, raw.column);
      }
      resolved = owner->dim_id;
      warn("attribute '" + raw.attribute + "' used on $" + raw.var + " (bound to " + bound_dim +
           ") belongs to " + resolved);
    }
    SelectionPredicate p{resolved, raw.attribute, raw.op, raw.rhs};
    if (std::find(q.selections.begin(), q.selections.end(), p) == q.selections.end()) q.selections.push_back(p);
  }

  // Fact set: explicit, else the first one referencing every involved dimension.
  const std::string& explicit_fact_set = bindings.at(fact_var).target;
  std::set<std::string> involved;
  for (const auto& j : joins) involved.insert(j.dim_id);
  for (const auto& sel : q.selections) involved.insert(sel.dim_id);
  const FactSetMeta* fact_set = nullptr;
  if (!explicit_fact_set.empty()) {
    fact_set = meta.FindFactSet(explicit_fact_set);
    if (fact_set == nullptr) {
      throw Error(ErrorCode::kUnknownDimension, "unknown fact set '" + explicit_fact_set + "'", block_line, 1);
    }
  } else {
    for (const auto& fs : meta.fact_sets) {
      if (std::all_of(involved.begin(), involved.end(), [&](const std::string& d) {
            return std::find(fs.dim_refs.begin(), fs.dim_refs.end(), d) != fs.dim_refs.end();
          })) {
        fact_set = &fs;
        break;
      }
    }
    if (fact_set == nullptr && !meta.fact_sets.empty()) fact_set = &meta.fact_sets.front();
    if (fact_set == nullptr) throw Error(ErrorCode::kUnknownDimension, "metadata declares no fact set");
  }
  auto references = [&](const std::string& d) {
    return std::find(fact_set->dim_refs.begin(), fact_set->dim_refs.end(), d) != fact_set->dim_refs.end();
  };

  for (const auto& raw : joins) {
    if (raw.fact_var != fact_var) {
      throw Error(ErrorCode::kSyntaxError, "join must start from the fact variable $" + fact_var, raw.line, raw.column);
    }
    auto it = bindings.find(raw.dim_var);
    if (it == bindings.end() || it->second.is_fact) {
      throw Error(ErrorCode::kSyntaxError, "$" + raw.dim_var + " is not bound to a dimension", raw.line, raw.column);
    }
    if (meta.FindDimension(raw.dim_id) == nullptr) {
      throw Error(ErrorCode::kUnknownDimension, "unknown dimension '" + raw.dim_id + "'", raw.line, raw.column);
    }
    if (!references(raw.dim_id)) {
      throw Error(ErrorCode::kUnknownDimension,
                  "fact set '" + fact_set->name + "' does not reference dimension '" + raw.dim_id + "'", raw.line,
                  raw.column);
    }
    if (it->second.target != raw.dim_id) {
      warn("$" + raw.dim_var + " is bound to " + it->second.target + " but joined as " + raw.dim_id);
    }
    JoinPredicate j{fact_set->name, raw.dim_id};
    if (std::find(q.joins.begin(), q.joins.end(), j) == q.joins.end()) q.joins.push_back(j);
  }
  for (const auto& sel : q.selections) {
    if (q.JoinsDimension(sel.dim_id)) continue;
    if (!references(sel.dim_id)) {
      throw Error(ErrorCode::kUnknownDimension,
                  "fact set '" + fact_set->name + "' does not reference dimension '" + sel.dim_id + "'");
    }
    warn("selection on " + sel.dim_id + " without a join; adding one");
    q.joins.push_back({fact_set->name, sel.dim_id});
  }
  return q;
}

}  // namespace

std::string QuoteLiteral(std::string_view literal) {
  std::string out = "'";
  for (char c : literal) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

std::string PredicateText(const SelectionPredicate& p) {
  return "attribute[@id=" + QuoteLiteral(p.attribute) + "]/@value" + std::string(CompareOpSymbol(p.op)) +
         QuoteLiteral(p.rhs);
}

std::string DescribePredicate(const SelectionPredicate& p) {
  return p.dim_id + "." + p.attribute + " " + std::string(CompareOpSymbol(p.op)) + " " + QuoteLiteral(p.rhs);
}

bool Query::JoinsDimension(const std::string& dim_id) const {
  return std::any_of(joins.begin(), joins.end(), [&](const JoinPredicate& j) { return j.dim_id == dim_id; });
}

std::vector<SelectionPredicate> Query::SelectionsOn(const std::string& dim_id) const {
  std::vector<SelectionPredicate> out;
  for (const auto& s : selections) {
    if (s.dim_id == dim_id) out.push_back(s);
  }
  return out;
}

const Query* Workload::Find(const std::string& query_id) const {
  for (const auto& q : queries) {
    if (q.query_id == query_id) return &q;
  }
  return nullptr;
}

Workload ParseWorkload(std::string_view text, const WarehouseMeta& meta, std::vector<std::string>* warnings) {
  Scanner s(text);
  Workload w;
  std::set<std::string> ids;
  for (;;) {
    Pragma pragma;
    while (auto comment = s.TakeComment()) {
      if (auto p = ParsePragma(*comment, s)) pragma = *p;
    }
    if (s.AtEnd()) break;
    const int line = s.line();
    Query q = ParseBlock(s, meta, pragma, w.queries.size() + 1, warnings);
    if (!ids.insert(q.query_id).second) {
      throw Error(ErrorCode::kSyntaxError, "duplicate query id '" + q.query_id + "'", line, 1);
    }
    w.queries.push_back(std::move(q));
  }
  return w;
}

std::string PrintWorkload(const Workload& workload) {
  static constexpr std::string_view kVarNames[] = {"y", "z", "w", "u", "v", "s", "t"};
  std::string out;
  for (const auto& q : workload.queries) {
    if (!out.empty()) out += '\n';
    out += "(: id=" + q.query_id + " freq=" + std::to_string(q.frequency) + " :)\n";
    std::map<std::string, std::string> var_of;
    for (size_t i = 0; i < q.joins.size(); ++i) {
      var_of[q.joins[i].dim_id] =
          i < std::size(kVarNames) ? std::string(kVarNames[i]) : "d" + std::to_string(i);
    }
    out += "for $x in //FactDoc[@id=" + QuoteLiteral(q.fact_set()) + "]/Fact";
    for (const auto& j : q.joins) {
      out += ",\n    $" + var_of[j.dim_id] + " in //dimensions[@dim-id=" + QuoteLiteral(j.dim_id) +
             "]/Level/instance";
    }
    out += '\n';
    bool first = true;
    auto cond = [&](const std::string& text) {
      out += first ? "where " : "  and ";
      out += text;
      out += '\n';
      first = false;
    };
    for (const auto& sel : q.selections) cond("$" + var_of.at(sel.dim_id) + "/" + PredicateText(sel));
    for (const auto& j : q.joins) {
      cond("$x/dimension[@dim-id=" + QuoteLiteral(j.dim_id) + "]/@value-id=$" + var_of[j.dim_id] + "/@id");
    }
    out += "return $x\n";
  }
  return out;
}

std::vector<SelectionPredicate> ExtractSelectionPredicates(const Workload& workload) {
  std::vector<SelectionPredicate> out;
  std::set<SelectionPredicate> seen;
  for (const auto& q : workload.queries) {
    for (const auto& p : q.selections) {
      if (seen.insert(p).second) out.push_back(p);
    }
  }
  return out;
}

std::map<std::string, std::vector<SelectionPredicate>> AttributePredicates(
    const std::vector<SelectionPredicate>& predicates, const WarehouseMeta& meta) {
  std::map<std::string, std::vector<SelectionPredicate>> out;
  for (const auto& p : predicates) {
    const DimensionMeta* dim = meta.FindDimension(p.dim_id);
    if (dim == nullptr) throw Error(ErrorCode::kUnknownDimension, "unknown dimension '" + p.dim_id + "'");
    if (!dim->HasAttribute(p.attribute)) {
      throw Error(ErrorCode::kUnknownAttribute,
                  "dimension '" + p.dim_id + "' has no attribute '" + p.attribute + "'");
    }
    out[p.dim_id].push_back(p);
  }
  return out;
}

}  // namespace xwfrag
