#include "xwfrag/generator.h"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <set>

#include "random.h"
#include "xwfrag/error.h"

namespace xwfrag {

using internal::HashName;
using internal::SplitMix;
using internal::UniformIndex;

const std::map<std::string, uint64_t>& XwebDimensionSizes() {
  static const std::map<std::string, uint64_t> sizes = {
      {"Customer", 1000}, {"Supplier", 1000}, {"Date", 500}, {"Part", 1000}};
  return sizes;
}

const std::vector<ConfigPreset>& BuiltinPresets() {
  static const std::vector<ConfigPreset> presets = {
      {"config1", 800, 13, 22, 20, XwebDimensionSizes()},
      {"config2", 800, 19, 35, 30, XwebDimensionSizes()},
      {"config3", 4000, 19, 35, 30, XwebDimensionSizes()},
      {"xweb", kXwebFacts, 19, 35, 30, XwebDimensionSizes()},
  };
  return presets;
}

const ConfigPreset& FindPreset(const std::string& name) {
  for (const auto& p : BuiltinPresets()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + name + "'");
}

std::vector<ConfigPreset> LoadPresets(const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
    throw Error(ErrorCode::kInvalidSpec, e.message(), static_cast<int>(e.line()));
  }
  std::vector<ConfigPreset> out;
  for (const auto& [name, section] : tree) {
    ConfigPreset preset{name, 0, 0, 0, 0, XwebDimensionSizes()};
    auto count = [&](const std::string& key) -> uint64_t {
      try {
        return section.get<uint64_t>(key);
      } catch (const pt::ptree_error&) {
        throw Error(ErrorCode::kInvalidSpec, "preset '" + name + "': missing or invalid '" + key + "'");
      }
    };
    preset.n_facts = count("facts");
    preset.n_queries = count("queries");
    preset.n_joins = count("joins");
    preset.n_predicates = count("predicates");
    for (auto& [dim, size] : preset.dim_sizes) {
      if (section.count(dim) != 0) size = count(dim);
    }
    for (const auto& [key, value] : section) {
      static const std::set<std::string> kKnown = {"facts", "queries", "joins", "predicates"};
      if (!kKnown.contains(key) && !preset.dim_sizes.contains(key)) {
        throw Error(ErrorCode::kInvalidSpec, "preset '" + name + "': unknown key '" + key + "'");
      }
    }
    out.push_back(std::move(preset));
  }
  return out;
}

namespace {

struct TargetAttribute {
  std::string dim_id;
  std::string attribute;
};

// Attributes predicates are drawn from, grouped by dimension.
const std::vector<TargetAttribute>& Targets() {
  static const std::vector<TargetAttribute> targets = {
      {"Customer", "c_mktsegment"}, {"Customer", "c_nation_key"}, {"Date", "d_month"},
      {"Date", "d_year"},           {"Part", "p_brand"},          {"Part", "p_size"},
  };
  return targets;
}

constexpr double kMinSelectivity = 0.05;
constexpr double kMaxSelectivity = 0.50;

// A split of an attribute's sorted active domain between values[i-1] and
// values[i], with every predicate spelling that selects one side of it.
struct Cut {
  size_t attribute;  // index into Targets()
  size_t index;
  std::vector<SelectionPredicate> spellings;
};

std::vector<Cut> CandidateCuts(const DimensionDoc& dim, size_t target_index) {
  const TargetAttribute& target = Targets()[target_index];
  std::map<std::string, size_t, bool (*)(const std::string&, const std::string&)> counts(
      [](const std::string& a, const std::string& b) { return CompareValues(a, b) < 0; });
  size_t total = 0;
  for (const Instance* inst : dim.AllInstances()) {
    ++counts[inst->AttributeOrEmpty(target.attribute)];
    ++total;
  }
  std::vector<std::string> values;
  std::vector<size_t> below;  // instances strictly below values[i]
  size_t running = 0;
  for (const auto& [v, n] : counts) {
    values.push_back(v);
    below.push_back(running);
    running += n;
  }

  auto in_range = [&](size_t n) {
    const double s = static_cast<double>(n) / static_cast<double>(total);
    return s >= kMinSelectivity && s <= kMaxSelectivity;
  };
  auto is_integer = [](const std::string& v) {
    return IsDecimal(v) && v.find('.') == std::string::npos && v.front() != '-';
  };

  std::vector<Cut> cuts;
  for (size_t i = 1; i < values.size(); ++i) {
    const std::string& lo = values[i - 1];
    const std::string& hi = values[i];
    // Half-way literal between two integers, e.g. '10.5' between 10 and 11.
    const std::string mid = is_integer(lo) && is_integer(hi) ? lo + ".5" : "";
    Cut cut{target_index, i, {}};
    auto add = [&](CompareOp op, const std::string& rhs) {
      cut.spellings.push_back({target.dim_id, target.attribute, op, rhs});
    };
    if (in_range(below[i])) {
      add(CompareOp::kLt, hi);
      add(CompareOp::kLe, lo);
      if (!mid.empty()) add(CompareOp::kLt, mid);
      if (i == 1) add(CompareOp::kEq, lo);
    }
    if (in_range(total - below[i])) {
      add(CompareOp::kGe, hi);
      add(CompareOp::kGt, lo);
      if (!mid.empty()) add(CompareOp::kGt, mid);
      if (i + 1 == values.size()) add(CompareOp::kEq, hi);
    }
    if (!cut.spellings.empty()) cuts.push_back(std::move(cut));
  }
  return cuts;
}

template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[UniformIndex(rng, i)]);
}

}  // namespace

Workload GenerateWorkload(const Warehouse& warehouse, const ConfigPreset& preset, uint64_t seed) {
  if (preset.n_queries == 0 || preset.n_predicates == 0) {
    throw Error(ErrorCode::kInvalidSpec, "preset '" + preset.name + "' needs at least one query and one predicate");
  }
  if (warehouse.facts.size() != 1) throw Error(ErrorCode::kInvalidSpec, "workload generation needs one fact set");
  const std::string& fact_set = warehouse.facts.front().fact_set;
  const FactSetMeta* fact_meta = warehouse.meta.FindFactSet(fact_set);
  if (fact_meta == nullptr) throw Error(ErrorCode::kInvalidSpec, "fact set '" + fact_set + "' is undeclared");
  const std::vector<std::string>& all_dims = fact_meta->dim_refs;
  if (preset.n_joins < preset.n_queries || preset.n_joins > preset.n_queries * all_dims.size()) {
    throw Error(ErrorCode::kInvalidSpec, "preset '" + preset.name + "': " + std::to_string(preset.n_joins) +
                                             " joins cannot be spread over " + std::to_string(preset.n_queries) +
                                             " queries and " + std::to_string(all_dims.size()) + " dimensions");
  }

  std::mt19937_64 rng(SplitMix(seed ^ HashName("workload")));

  // Candidate cuts per targeted attribute present in the warehouse.
  std::vector<std::vector<Cut>> candidates(Targets().size());
  std::set<std::string> target_dims;
  for (size_t t = 0; t < Targets().size(); ++t) {
    auto dim = warehouse.dimensions.find(Targets()[t].dim_id);
    if (dim == warehouse.dimensions.end()) continue;
    candidates[t] = CandidateCuts(dim->second, t);
    Shuffle(candidates[t], rng);
    if (!candidates[t].empty()) target_dims.insert(Targets()[t].dim_id);
  }
  if (target_dims.size() < 2) throw Error(ErrorCode::kInvalidSpec, "fewer than two dimensions can carry predicates");

  // One cut per attribute, then more cuts until enough spellings exist.
  std::vector<Cut> chosen;
  size_t pool_size = 0;
  for (auto& c : candidates) {
    if (c.empty()) continue;
    pool_size += c.back().spellings.size();
    chosen.push_back(std::move(c.back()));
    c.pop_back();
  }
  while (pool_size < preset.n_predicates || chosen.size() > preset.n_predicates) {
    if (chosen.size() > preset.n_predicates) {
      throw Error(ErrorCode::kInvalidSpec, "preset '" + preset.name + "' needs at least " +
                                               std::to_string(chosen.size()) + " predicates");
    }
    std::vector<size_t> open;
    for (size_t t = 0; t < candidates.size(); ++t) {
      if (!candidates[t].empty()) open.push_back(t);
    }
    if (open.empty()) {
      throw Error(ErrorCode::kInvalidSpec, "cannot draw " + std::to_string(preset.n_predicates) + " distinct predicates");
    }
    auto& c = candidates[open[UniformIndex(rng, open.size())]];
    pool_size += c.back().spellings.size();
    chosen.push_back(std::move(c.back()));
    c.pop_back();
  }

  // Every cut contributes one spelling; the rest are drawn from the pool.
  std::vector<SelectionPredicate> predicates;
  std::vector<SelectionPredicate> pool;
  for (auto& cut : chosen) {
    Shuffle(cut.spellings, rng);
    predicates.push_back(cut.spellings.front());
    pool.insert(pool.end(), cut.spellings.begin() + 1, cut.spellings.end());
  }
  Shuffle(pool, rng);
  pool.resize(preset.n_predicates - predicates.size());
  predicates.insert(predicates.end(), pool.begin(), pool.end());
  Shuffle(predicates, rng);

  // Distribute predicates over queries: at most one predicate per attribute
  // in a query, and never more selected dimensions than the join budget.
  const size_t m = preset.n_queries;
  std::vector<std::vector<SelectionPredicate>> selections(m);
  auto has_attribute = [&](size_t q, const SelectionPredicate& p) {
    return std::any_of(selections[q].begin(), selections[q].end(),
                       [&](const SelectionPredicate& s) { return s.attribute == p.attribute && s.dim_id == p.dim_id; });
  };
  auto has_dim = [&](size_t q, const std::string& dim_id) {
    return std::any_of(selections[q].begin(), selections[q].end(),
                       [&](const SelectionPredicate& s) { return s.dim_id == dim_id; });
  };
  // Selections on one dimension must keep at least one instance in common.
  auto compatible = [&](size_t q, const SelectionPredicate& p) {
    const DimensionDoc& dim = warehouse.dimensions.at(p.dim_id);
    for (const Instance* inst : dim.AllInstances()) {
      if (!p.Evaluate(*inst)) continue;
      if (std::all_of(selections[q].begin(), selections[q].end(), [&](const SelectionPredicate& s) {
            return s.dim_id != p.dim_id || s.Evaluate(*inst);
          })) {
        return true;
      }
    }
    return false;
  };
  size_t required_joins = 0;
  // Queries left without a predicate of their own still need one join.
  const size_t reserved = m > predicates.size() ? m - predicates.size() : 0;
  auto add = [&](size_t q, const SelectionPredicate& p) {
    if (!has_dim(q, p.dim_id)) ++required_joins;
    selections[q].push_back(p);
  };

  for (size_t k = 0; k < predicates.size(); ++k) {
    const SelectionPredicate& p = predicates[k];
    if (k < m) {
      add(k, p);
      continue;
    }
    // Prefer a query already on the same dimension: it builds affinity.
    std::vector<size_t> same_dim, other;
    for (size_t q = 0; q < m; ++q) {
      if (has_attribute(q, p)) continue;
      if (has_dim(q, p.dim_id)) {
        if (!compatible(q, p)) continue;
        same_dim.push_back(q);
      } else if (required_joins + 1 + reserved <= preset.n_joins) {
        other.push_back(q);
      }
    }
    const bool use_same = !same_dim.empty() && (other.empty() || UniformIndex(rng, 10) < 7);
    const auto& choices = use_same ? same_dim : other;
    if (choices.empty()) throw Error(ErrorCode::kInvalidSpec, "cannot place predicate " + DescribePredicate(p));
    add(choices[UniformIndex(rng, choices.size())], p);
  }
  for (size_t q = predicates.size(); q < m; ++q) add(q, predicates[UniformIndex(rng, predicates.size())]);

  // Reuse predicates on other attributes of dimensions a query already
  // selects on, so predicates co-occur across queries.
  for (size_t q = 0; q < m; ++q) {
    if (UniformIndex(rng, 2) == 0) continue;
    std::vector<size_t> options;
    for (size_t k = 0; k < predicates.size(); ++k) {
      if (has_dim(q, predicates[k].dim_id) && !has_attribute(q, predicates[k]) && compatible(q, predicates[k])) {
        options.push_back(k);
      }
    }
    if (!options.empty()) add(q, predicates[options[UniformIndex(rng, options.size())]]);
  }

  // Joins: selected dimensions first, then extra joins up to the budget.
  std::vector<std::set<std::string>> joins(m);
  for (size_t q = 0; q < m; ++q) {
    for (const auto& s : selections[q]) joins[q].insert(s.dim_id);
  }
  for (size_t total = required_joins; total < preset.n_joins; ++total) {
    std::vector<std::pair<size_t, std::string>> options;
    for (size_t q = 0; q < m; ++q) {
      for (const auto& d : all_dims) {
        if (!joins[q].contains(d)) options.emplace_back(q, d);
      }
    }
    const auto& [q, d] = options[UniformIndex(rng, options.size())];
    joins[q].insert(d);
  }

  Workload workload;
  for (size_t q = 0; q < m; ++q) {
    Query query;
    query.query_id = "q" + std::to_string(q + 1);
    query.selections = selections[q];
    std::sort(query.selections.begin(), query.selections.end());
    for (const auto& d : all_dims) {
      if (joins[q].contains(d)) query.joins.push_back({fact_set, d});
    }
    query.frequency = 5 + UniformIndex(rng, 26);
    workload.queries.push_back(std::move(query));
  }
  return workload;
}

GeneratedConfig GeneratePreset(const ConfigPreset& preset, uint64_t seed) {
  if (preset.n_facts == 0) throw Error(ErrorCode::kInvalidSpec, "preset '" + preset.name + "' has no facts");
  GeneratedConfig out;
  out.warehouse = GenerateWarehouse({preset.n_facts, preset.dim_sizes, seed, std::nullopt});
  out.workload = GenerateWorkload(out.warehouse, preset, seed);
  return out;
}

Warehouse GenerateXwebFull(uint64_t seed) {
  return GenerateWarehouse({kXwebFacts, XwebDimensionSizes(), seed, std::nullopt});
}

}  // namespace xwfrag
