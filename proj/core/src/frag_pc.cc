#include "xwfrag/frag_pc.h"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "xwfrag/error.h"

namespace xwfrag {

Condition Minterm::ToCondition() const {
  std::vector<Condition> atoms;
  atoms.reserve(conjuncts.size());
  for (const auto& c : conjuncts) atoms.push_back(Condition::Atom(c.Effective()));
  return Condition::And(std::move(atoms));
}

bool Minterm::Evaluate(const Instance& instance) const {
  return std::all_of(conjuncts.begin(), conjuncts.end(),
                     [&](const SignedPredicate& c) { return c.predicate.Evaluate(instance) == c.positive; });
}

namespace {

// One bit per predicate; distinct signatures only.
std::vector<uint64_t> DistinctSignatures(std::span<const SelectionPredicate> predicates, const DimensionDoc& dim) {
  std::unordered_set<uint64_t> seen;
  for (const Instance* instance : dim.AllInstances()) {
    uint64_t sig = 0;
    for (size_t i = 0; i < predicates.size(); ++i) {
      if (predicates[i].Evaluate(*instance)) sig |= uint64_t{1} << i;
    }
    seen.insert(sig);
  }
  return {seen.begin(), seen.end()};
}

size_t CellCount(const std::vector<uint64_t>& signatures, uint64_t mask) {
  std::unordered_set<uint64_t> cells;
  for (uint64_t sig : signatures) cells.insert(sig & mask);
  return cells.size();
}

// Smallest mask (fewer bits than `limit`) preserving the cell count, trying
// sizes in ascending order and index combinations lexicographically. Gives
// up after `budget` candidate masks.
std::optional<uint64_t> ExactMinimum(const std::vector<uint64_t>& signatures, size_t n, size_t limit,
                                     size_t target_cells, size_t budget) {
  size_t min_size = 0;
  while ((size_t{1} << min_size) < target_cells) ++min_size;
  for (size_t k = min_size; k < limit; ++k) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (budget-- == 0) return std::nullopt;
      uint64_t mask = 0;
      for (size_t i : idx) mask |= uint64_t{1} << i;
      if (CellCount(signatures, mask) == target_cells) return mask;
      // Next combination.
      size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return std::nullopt;
}

constexpr size_t kExactSearchBudget = 2'000'000;

}  // namespace

std::vector<SelectionPredicate> ComMin(std::span<const SelectionPredicate> predicates, const DimensionDoc& dim) {
  // Exact duplicates never refine the partition.
  std::vector<SelectionPredicate> unique;
  for (const auto& p : predicates) {
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(p);
  }
  const auto instances = dim.AllInstances();
  auto cells_of = [&](const std::vector<SelectionPredicate>& set) {
    std::unordered_map<std::vector<bool>, int> cells;
    for (const Instance* instance : instances) {
      std::vector<bool> sig(set.size());
      for (size_t i = 0; i < set.size(); ++i) sig[i] = set[i].Evaluate(*instance);
      cells.emplace(std::move(sig), 0);
    }
    return cells.size();
  };

  const size_t target = cells_of(unique);
  std::vector<SelectionPredicate> kept = unique;
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<SelectionPredicate> trial = kept;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (cells_of(trial) == target) {
        kept = std::move(trial);
        changed = true;
        break;
      }
    }
  }

  // Greedy elimination reaches a minimal set, not always a minimum one.
  if (kept.size() > 1 && unique.size() <= kMaxMintermPredicates) {
    const auto signatures = DistinctSignatures(unique, dim);
    if (auto mask = ExactMinimum(signatures, unique.size(), kept.size(), target, kExactSearchBudget)) {
      kept.clear();
      for (size_t i = 0; i < unique.size(); ++i) {
        if (*mask >> i & 1) kept.push_back(unique[i]);
      }
    }
  }
  return kept;
}

std::vector<Minterm> GenerateMinterms(std::span<const SelectionPredicate> predicates) {
  if (predicates.size() > kMaxMintermPredicates) {
    throw Error(ErrorCode::kTooManyPredicates, std::to_string(predicates.size()) + " predicates exceed the limit of " +
                                                   std::to_string(kMaxMintermPredicates) + " for minterm generation");
  }
  std::vector<Minterm> out;
  std::vector<SignedPredicate> prefix;
  std::vector<SelectionPredicate> effective;
  auto dfs = [&](auto&& self, size_t depth) -> void {
    if (depth == predicates.size()) {
      out.push_back({prefix});
      return;
    }
    for (bool positive : {true, false}) {
      prefix.push_back({predicates[depth], positive});
      effective.push_back(prefix.back().Effective());
      if (IsSatisfiable(effective)) self(self, depth + 1);
      effective.pop_back();
      prefix.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

DimensionFragmentation FragmentDimensionPc(const DimensionDoc& dim, std::span<const Minterm> minterms) {
  std::vector<std::set<std::string>> members(minterms.size());
  for (const Instance* instance : dim.AllInstances()) {
    auto it = std::find_if(minterms.begin(), minterms.end(), [&](const Minterm& m) { return m.Evaluate(*instance); });
    if (it == minterms.end()) {
      throw Error(ErrorCode::kIntegrityViolation,
                  "instance '" + instance->instance_id + "' of " + dim.dim_id + " satisfies no minterm");
    }
    members[static_cast<size_t>(it - minterms.begin())].insert(instance->instance_id);
  }
  DimensionFragmentation result;
  for (size_t i = 0; i < minterms.size(); ++i) {
    std::string id = dim.dim_id + "_m" + std::to_string(i + 1);
    if (members[i].empty()) {
      result.dropped_empty.push_back(id + ": " + minterms[i].ToCondition().ToString());
      continue;
    }
    result.fragments.push_back({std::move(id), dim.dim_id, minterms[i].ToCondition(), std::move(members[i])});
  }
  return result;
}

}  // namespace xwfrag
