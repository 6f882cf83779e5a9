#include "xwfrag/condition.h"

#include <algorithm>
#include <map>

#include "scanner.h"
#include "xwfrag/error.h"

namespace xwfrag {

// ---------------------------------------------------------------------------
// Construction and evaluation
// ---------------------------------------------------------------------------

Condition Condition::Atom(SelectionPredicate predicate) {
  Condition c;
  c.kind_ = Kind::kAtom;
  c.atom_ = std::move(predicate);
  return c;
}

Condition Condition::Not(Condition operand) {
  Condition c;
  c.kind_ = Kind::kNot;
  c.operands_.push_back(std::move(operand));
  return c;
}

Condition Condition::And(std::vector<Condition> operands) {
  std::vector<Condition> flat;
  for (auto& op : operands) {
    if (op.kind_ == Kind::kTrue) continue;
    if (op.kind_ == Kind::kAnd) {
      for (auto& inner : op.operands_) flat.push_back(std::move(inner));
    } else {
      flat.push_back(std::move(op));
    }
  }
  if (flat.empty()) return True();
  if (flat.size() == 1) return std::move(flat.front());
  Condition c;
  c.kind_ = Kind::kAnd;
  c.operands_ = std::move(flat);
  return c;
}

Condition Condition::Or(std::vector<Condition> operands) {
  std::vector<Condition> flat;
  for (auto& op : operands) {
    if (op.kind_ == Kind::kTrue) return True();
    if (op.kind_ == Kind::kOr) {
      for (auto& inner : op.operands_) flat.push_back(std::move(inner));
    } else {
      flat.push_back(std::move(op));
    }
  }
  if (flat.empty()) return Not(True());
  if (flat.size() == 1) return std::move(flat.front());
  Condition c;
  c.kind_ = Kind::kOr;
  c.operands_ = std::move(flat);
  return c;
}

Condition Condition::AllOf(std::span<const SelectionPredicate> predicates) {
  std::vector<Condition> atoms;
  for (const auto& p : predicates) atoms.push_back(Atom(p));
  return And(std::move(atoms));
}

Condition Condition::AnyOf(std::span<const SelectionPredicate> predicates) {
  std::vector<Condition> atoms;
  for (const auto& p : predicates) atoms.push_back(Atom(p));
  return Or(std::move(atoms));
}

bool Condition::Evaluate(const Instance& instance) const {
  switch (kind_) {
    case Kind::kTrue: return true;
    case Kind::kAtom: return atom_.Evaluate(instance);
    case Kind::kNot: return !operands_.front().Evaluate(instance);
    case Kind::kAnd:
      return std::all_of(operands_.begin(), operands_.end(), [&](const Condition& c) { return c.Evaluate(instance); });
    case Kind::kOr:
      return std::any_of(operands_.begin(), operands_.end(), [&](const Condition& c) { return c.Evaluate(instance); });
  }
  return false;
}

std::vector<Condition> Condition::Conjuncts() const {
  if (kind_ == Kind::kAnd) return operands_;
  if (kind_ == Kind::kTrue) return {};
  return {*this};
}

std::vector<SelectionPredicate> Condition::Atoms() const {
  std::vector<SelectionPredicate> out;
  if (kind_ == Kind::kAtom) {
    out.push_back(atom_);
  } else {
    for (const auto& op : operands_) {
      auto inner = op.Atoms();
      out.insert(out.end(), inner.begin(), inner.end());
    }
  }
  return out;
}

std::string Condition::ToString() const {
  switch (kind_) {
    case Kind::kTrue: return "true()";
    case Kind::kAtom: return PredicateText(atom_);
    case Kind::kNot: {
      const Condition& inner = operands_.front();
      if (inner.kind_ == Kind::kTrue) return "false()";
      if (inner.kind_ == Kind::kAtom) return "not " + inner.ToString();
      return "not (" + inner.ToString() + ")";
    }
    case Kind::kAnd:
    case Kind::kOr: {
      const bool is_and = kind_ == Kind::kAnd;
      std::string out;
      for (const auto& op : operands_) {
        if (!out.empty()) out += is_and ? " and " : " or ";
        const bool wrap = op.kind_ == Kind::kOr || (!is_and && op.kind_ == Kind::kAnd);
        out += wrap ? "(" + op.ToString() + ")" : op.ToString();
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Text parsing
// ---------------------------------------------------------------------------

namespace {

class ConditionParser {
 public:
  ConditionParser(std::string_view text, const std::string& dim_id) : s_(text), dim_id_(dim_id) {}

  Condition Parse() {
    Condition c = ParseOr();
    if (!s_.AtEnd()) s_.Fail("unexpected trailing input in condition");
    return c;
  }

 private:
  Condition ParseOr() {
    std::vector<Condition> ops{ParseAnd()};
    while (s_.TryConsume("or")) ops.push_back(ParseAnd());
    return ops.size() == 1 ? std::move(ops.front()) : Condition::Or(std::move(ops));
  }

  Condition ParseAnd() {
    std::vector<Condition> ops{ParseUnary()};
    while (s_.TryConsume("and")) ops.push_back(ParseUnary());
    return ops.size() == 1 ? std::move(ops.front()) : Condition::And(std::move(ops));
  }

  Condition ParseUnary() {
    if (s_.TryConsume("not")) return Condition::Not(ParseUnary());
    if (s_.TryConsume("true()")) return Condition::True();
    if (s_.TryConsume("false()")) return Condition::Not(Condition::True());
    if (s_.TryConsume("(")) {
      Condition inner = ParseOr();
      s_.Expect(")");
      return inner;
    }
    if (s_.Peek() == '$') {
      s_.Variable();
      s_.Expect("/");
    }
    s_.Expect("attribute");
    s_.Expect("[");
    s_.Expect("@");
    s_.Expect("id");
    s_.Expect("=");
    std::string attribute = s_.Literal();
    s_.Expect("]");
    s_.Expect("/");
    s_.Expect("@");
    s_.Expect("value");
    auto op = s_.TryOperator();
    if (!op) s_.Fail("expected a comparison operator");
    return Condition::Atom({dim_id_, std::move(attribute), *op, s_.Literal()});
  }

  internal::Scanner s_;
  const std::string& dim_id_;
};

}  // namespace

Condition ParseCondition(std::string_view text, const std::string& dim_id) {
  return ConditionParser(text, dim_id).Parse();
}

// ---------------------------------------------------------------------------
// Satisfiability
// ---------------------------------------------------------------------------

namespace {

enum class Tri : uint8_t { kFalse, kUnknown, kTrue };

Tri TriNot(Tri t) {
  if (t == Tri::kTrue) return Tri::kFalse;
  if (t == Tri::kFalse) return Tri::kTrue;
  return t;
}

Tri FromOrdering(CompareOp op, std::strong_ordering o) { return Holds(op, o) ? Tri::kTrue : Tri::kFalse; }

// A slice of one attribute's value space. Slots index the sorted literal list
// of the region's world: odd slot 2i+1 is the point literal[i], even slot 2i
// is the open interval just below literal[i] (or above the last literal).
struct Region {
  bool numeric;
  int slot;
};

struct AttributeSpace {
  std::vector<std::string> numeric_literals;  // sorted, numerically distinct
  std::vector<std::string> string_literals;   // sorted, bytewise distinct
  std::vector<Region> regions;                // feasible regions only

  void Build() {
    std::sort(numeric_literals.begin(), numeric_literals.end(),
              [](const std::string& a, const std::string& b) { return CompareDecimals(a, b) < 0; });
    numeric_literals.erase(std::unique(numeric_literals.begin(), numeric_literals.end(),
                                       [](const std::string& a, const std::string& b) {
                                         return CompareDecimals(a, b) == 0;
                                       }),
                           numeric_literals.end());
    std::sort(string_literals.begin(), string_literals.end());
    string_literals.erase(std::unique(string_literals.begin(), string_literals.end()), string_literals.end());

    // Decimals form a dense unbounded order: every slot is inhabited.
    for (int slot = 0; slot <= 2 * static_cast<int>(numeric_literals.size()); ++slot) {
      regions.push_back({true, slot});
    }
    // Non-decimal strings: a point is inhabited iff the literal itself is not
    // a decimal; nothing lies below the empty string. Other open intervals are
    // treated as inhabited (true for every literal that can appear in XML).
    for (int slot = 0; slot <= 2 * static_cast<int>(string_literals.size()); ++slot) {
      if (slot % 2 == 1) {
        if (IsDecimal(string_literals[static_cast<size_t>(slot / 2)])) continue;
      } else if (slot == 0 && !string_literals.empty() && string_literals.front().empty()) {
        continue;
      }
      regions.push_back({false, slot});
    }
  }

  static std::strong_ordering SlotVersus(int slot, size_t literal_index) {
    const auto j = static_cast<int>(literal_index);
    if (slot % 2 == 1) return (slot / 2) <=> j;
    // Interval below literal[slot/2]: less than it and everything after it.
    return j >= slot / 2 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  Tri Evaluate(const Region& region, CompareOp op, const std::string& literal) const {
    if (region.numeric) {
      if (IsDecimal(literal)) {
        auto it = std::lower_bound(numeric_literals.begin(), numeric_literals.end(), literal,
                                   [](const std::string& a, const std::string& b) { return CompareDecimals(a, b) < 0; });
        return FromOrdering(op, SlotVersus(region.slot, static_cast<size_t>(it - numeric_literals.begin())));
      }
      // A decimal spelling starts with '-' or a digit and is never empty.
      if (literal.empty()) return FromOrdering(op, std::strong_ordering::greater);
      const auto first = static_cast<unsigned char>(literal.front());
      if (first > '9') return FromOrdering(op, std::strong_ordering::less);
      if (first < '-') return FromOrdering(op, std::strong_ordering::greater);
      if (op == CompareOp::kEq) return Tri::kFalse;
      if (op == CompareOp::kNe) return Tri::kTrue;
      return Tri::kUnknown;
    }
    auto it = std::lower_bound(string_literals.begin(), string_literals.end(), literal);
    return FromOrdering(op, SlotVersus(region.slot, static_cast<size_t>(it - string_literals.begin())));
  }
};

struct CompiledNode {
  Condition::Kind kind;
  int attribute = -1;
  std::vector<Tri> table;  // atom value per region of its attribute
  std::vector<int> children;
};

class SatSolver {
 public:
  explicit SatSolver(const Condition& condition) {
    CollectLiterals(condition);
    for (auto& space : spaces_) space.Build();
    root_ = Compile(condition);
    assignment_.assign(spaces_.size(), -1);
  }

  bool Solve() { return Search(0); }

 private:
  void CollectLiterals(const Condition& c) {
    if (c.kind() == Condition::Kind::kAtom) {
      const auto& p = c.atom();
      auto [it, inserted] = attribute_index_.try_emplace({p.dim_id, p.attribute}, static_cast<int>(spaces_.size()));
      if (inserted) spaces_.emplace_back();
      AttributeSpace& space = spaces_[static_cast<size_t>(it->second)];
      if (IsDecimal(p.rhs)) space.numeric_literals.push_back(p.rhs);
      space.string_literals.push_back(p.rhs);
      return;
    }
    for (const auto& op : c.operands()) CollectLiterals(op);
  }

  int Compile(const Condition& c) {
    CompiledNode node;
    node.kind = c.kind();
    if (c.kind() == Condition::Kind::kAtom) {
      const auto& p = c.atom();
      node.attribute = attribute_index_.at({p.dim_id, p.attribute});
      const AttributeSpace& space = spaces_[static_cast<size_t>(node.attribute)];
      for (const auto& region : space.regions) node.table.push_back(space.Evaluate(region, p.op, p.rhs));
    } else {
      for (const auto& op : c.operands()) node.children.push_back(Compile(op));
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  Tri Eval(int index) const {
    const CompiledNode& n = nodes_[static_cast<size_t>(index)];
    switch (n.kind) {
      case Condition::Kind::kTrue: return Tri::kTrue;
      case Condition::Kind::kAtom: {
        const int region = assignment_[static_cast<size_t>(n.attribute)];
        return region < 0 ? Tri::kUnknown : n.table[static_cast<size_t>(region)];
      }
      case Condition::Kind::kNot: return TriNot(Eval(n.children.front()));
      case Condition::Kind::kAnd: {
        Tri acc = Tri::kTrue;
        for (int child : n.children) {
          const Tri t = Eval(child);
          if (t == Tri::kFalse) return Tri::kFalse;
          if (t == Tri::kUnknown) acc = Tri::kUnknown;
        }
        return acc;
      }
      case Condition::Kind::kOr: {
        Tri acc = Tri::kFalse;
        for (int child : n.children) {
          const Tri t = Eval(child);
          if (t == Tri::kTrue) return Tri::kTrue;
          if (t == Tri::kUnknown) acc = Tri::kUnknown;
        }
        return acc;
      }
    }
    return Tri::kUnknown;
  }

  // Kleene logic is monotone: a definite value under a partial assignment
  // holds for every completion, so False prunes and True short-circuits.
  bool Search(size_t depth) {
    const Tri value = Eval(root_);
    if (value == Tri::kFalse) return false;
    if (value == Tri::kTrue) return true;
    if (depth == spaces_.size()) return true;  // unknown only via inexact lexicographic atoms
    const size_t n_regions = spaces_[depth].regions.size();
    for (size_t r = 0; r < n_regions; ++r) {
      assignment_[depth] = static_cast<int>(r);
      if (Search(depth + 1)) return true;
    }
    assignment_[depth] = -1;
    return false;
  }

  std::map<std::pair<std::string, std::string>, int> attribute_index_;
  std::vector<AttributeSpace> spaces_;
  std::vector<CompiledNode> nodes_;
  std::vector<int> assignment_;
  int root_ = -1;
};

}  // namespace

bool IsSatisfiable(const Condition& condition) {
  if (condition.kind() == Condition::Kind::kAnd) {
    // Conjunctions split into independent per-attribute groups when every
    // operand is an atom: attributes never constrain each other.
    const auto& ops = condition.operands();
    if (std::all_of(ops.begin(), ops.end(), [](const Condition& c) { return c.kind() == Condition::Kind::kAtom; })) {
      std::vector<SelectionPredicate> atoms;
      for (const auto& op : ops) atoms.push_back(op.atom());
      return IsSatisfiable(atoms);
    }
  }
  return SatSolver(condition).Solve();
}

bool IsSatisfiable(std::span<const SelectionPredicate> conjunction) {
  std::map<std::pair<std::string, std::string>, std::vector<Condition>> groups;
  for (const auto& p : conjunction) groups[{p.dim_id, p.attribute}].push_back(Condition::Atom(p));
  for (auto& [key, atoms] : groups) {
    Condition group = atoms.size() == 1 ? std::move(atoms.front()) : Condition::And(std::move(atoms));
    if (!SatSolver(group).Solve()) return false;
  }
  return true;
}

bool Implies(const SelectionPredicate& p, const SelectionPredicate& q) {
  if (p.dim_id != q.dim_id || p.attribute != q.attribute) return p == q;
  const SelectionPredicate both[] = {p, q.Negated()};
  return !IsSatisfiable(both);
}

}  // namespace xwfrag
