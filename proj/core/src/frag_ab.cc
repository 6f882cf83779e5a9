#include "xwfrag/frag_ab.h"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace xwfrag {

PredicateUsageMatrix BuildPum(const Workload& workload, std::span<const SelectionPredicate> predicates) {
  PredicateUsageMatrix pum;
  pum.n_predicates = predicates.size();
  for (const auto& q : workload.queries) {
    pum.query_ids.push_back(q.query_id);
    pum.freq.push_back(q.frequency);
    std::vector<bool> row(predicates.size());
    for (size_t j = 0; j < predicates.size(); ++j) {
      row[j] = std::find(q.selections.begin(), q.selections.end(), predicates[j]) != q.selections.end();
    }
    pum.cells.push_back(std::move(row));
  }
  return pum;
}

AffinityMatrix BuildAffinity(const PredicateUsageMatrix& pum, std::span<const SelectionPredicate> predicates) {
  const size_t n = predicates.size();
  AffinityMatrix aff;
  aff.cells.assign(n, std::vector<AffinityCell>(n));
  for (size_t q = 0; q < pum.cells.size(); ++q) {
    const auto& row = pum.cells[q];
    for (size_t i = 0; i < n; ++i) {
      if (!row[i]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (row[j]) aff.cells[i][j].value += pum.freq[q];
      }
    }
  }

  auto same_attribute = [&](size_t i, size_t j) {
    return predicates[i].dim_id == predicates[j].dim_id && predicates[i].attribute == predicates[j].attribute;
  };
  // partners[i]: predicates on other attributes co-used with p_i.
  std::vector<std::set<size_t>> partners(n);
  for (const auto& row : pum.cells) {
    for (size_t i = 0; i < n; ++i) {
      if (!row[i]) continue;
      for (size_t c = 0; c < n; ++c) {
        if (row[c] && !same_attribute(i, c)) partners[i].insert(c);
      }
    }
  }

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (!same_attribute(i, j)) continue;
      AffinityCell& ij = aff.cells[i][j];
      AffinityCell& ji = aff.cells[j][i];
      if (Implies(predicates[i], predicates[j])) {
        ij.kind = AffinityCell::Kind::kImplies;
        ji.kind = AffinityCell::Kind::kImpliedBy;
      } else if (Implies(predicates[j], predicates[i])) {
        ij.kind = AffinityCell::Kind::kImpliedBy;
        ji.kind = AffinityCell::Kind::kImplies;
      } else {
        const auto& a = partners[i];
        const auto& b = partners[j];
        const bool common = std::any_of(a.begin(), a.end(), [&](size_t c) { return b.contains(c); });
        if (common) ij.kind = ji.kind = AffinityCell::Kind::kSimilar;
      }
    }
  }
  return aff;
}

namespace {

struct Graph {
  std::vector<std::vector<size_t>> groups;  // members per node
  std::vector<std::vector<uint64_t>> weight;
};

Graph MergeRelated(const AffinityMatrix& aff) {
  const size_t n = aff.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i != j && aff.at(i, j).kind != AffinityCell::Kind::kNumeric) {
        const size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  Graph g;
  std::map<size_t, size_t> node_of_root;
  std::vector<size_t> node_of(n);
  for (size_t i = 0; i < n; ++i) {
    auto [it, inserted] = node_of_root.try_emplace(find(i), g.groups.size());
    if (inserted) g.groups.emplace_back();
    g.groups[it->second].push_back(i);
    node_of[i] = it->second;
  }
  g.weight.assign(g.groups.size(), std::vector<uint64_t>(g.groups.size(), 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (node_of[i] != node_of[j]) g.weight[node_of[i]][node_of[j]] += aff.at(i, j).value;
    }
  }
  return g;
}

// Grows one path from the heaviest active edge and returns the nodes to emit.
std::vector<size_t> GrowCluster(const Graph& g, const std::vector<bool>& active) {
  const size_t n = g.groups.size();
  std::optional<std::pair<size_t, size_t>> seed;
  uint64_t best = 0;
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      if (active[a] && active[b] && g.weight[a][b] > best) {
        best = g.weight[a][b];
        seed = {a, b};
      }
    }
  }
  if (!seed) return {};

  std::deque<size_t> path{seed->first, seed->second};
  std::set<size_t> on_path{seed->first, seed->second};
  std::set<std::pair<size_t, size_t>> used_closings;
  std::set<size_t> cycle;
  uint64_t cycle_min = 0;

  auto edge_key = [](size_t a, size_t b) { return std::pair{std::min(a, b), std::max(a, b)}; };

  while (true) {
    struct Candidate {
      bool at_back;
      size_t target;
      uint64_t w;
      bool closing;
    };
    std::optional<Candidate> pick;
    for (bool at_back : {true, false}) {
      const size_t end = at_back ? path.back() : path.front();
      const size_t neighbour = at_back ? path[path.size() - 2] : path[1];
      for (size_t t = 0; t < n; ++t) {
        const uint64_t w = g.weight[end][t];
        if (t == end || !active[t] || w == 0) continue;
        const bool closing = on_path.contains(t);
        if (closing && (t == neighbour || used_closings.contains(edge_key(end, t)))) continue;
        if (!pick || w > pick->w) pick = Candidate{at_back, t, w, closing};
      }
    }
    if (!pick) break;

    const size_t end = pick->at_back ? path.back() : path.front();
    if (pick->closing) {
      used_closings.insert(edge_key(end, pick->target));
      // The segment of the path between the two endpoints of the edge.
      const auto pos_t = static_cast<size_t>(std::find(path.begin(), path.end(), pick->target) - path.begin());
      const size_t pos_e = pick->at_back ? path.size() - 1 : 0;
      const size_t lo = std::min(pos_t, pos_e), hi = std::max(pos_t, pos_e);
      if (cycle.empty()) {
        cycle_min = pick->w;
        for (size_t k = lo; k < hi; ++k) cycle_min = std::min(cycle_min, g.weight[path[k]][path[k + 1]]);
        for (size_t k = lo; k <= hi; ++k) cycle.insert(path[k]);
      } else if (pick->w >= cycle_min) {
        for (size_t k = lo; k <= hi; ++k) cycle.insert(path[k]);
      }
      continue;
    }
    if (cycle.contains(end)) {
      if (pick->w < cycle_min) break;  // cut
      cycle.insert(pick->target);
    }
    if (pick->at_back) {
      path.push_back(pick->target);
    } else {
      path.push_front(pick->target);
    }
    on_path.insert(pick->target);
  }
  if (!cycle.empty()) return {cycle.begin(), cycle.end()};
  return {path.begin(), path.end()};
}

}  // namespace

ClusteringResult ClusterPredicates(const AffinityMatrix& affinity) {
  const Graph g = MergeRelated(affinity);
  const size_t n = g.groups.size();
  std::vector<bool> active(n, true);
  std::vector<std::vector<size_t>> clusters;  // node lists
  while (true) {
    auto nodes = GrowCluster(g, active);
    if (nodes.empty()) break;
    for (size_t v : nodes) active[v] = false;
    clusters.push_back(std::move(nodes));
  }

  std::vector<size_t> unclustered_nodes;
  const size_t emitted = clusters.size();
  for (size_t v = 0; v < n; ++v) {
    if (!active[v]) continue;
    std::optional<size_t> target;
    uint64_t best = 0;
    for (size_t c = 0; c < emitted; ++c) {
      uint64_t w = 0;
      for (size_t u : clusters[c]) w += g.weight[v][u];
      if (w > best) {
        best = w;
        target = c;
      }
    }
    if (target) {
      clusters[*target].push_back(v);
    } else if (g.groups[v].size() >= 2) {
      clusters.push_back({v});
    } else {
      unclustered_nodes.push_back(v);
    }
  }

  ClusteringResult result;
  for (size_t c = 0; c < clusters.size(); ++c) {
    PredicateCycle cycle{"c" + std::to_string(c + 1), {}};
    for (size_t v : clusters[c]) cycle.members.insert(cycle.members.end(), g.groups[v].begin(), g.groups[v].end());
    std::sort(cycle.members.begin(), cycle.members.end());
    result.cycles.push_back(std::move(cycle));
  }
  for (size_t v : unclustered_nodes) {
    result.unclustered.insert(result.unclustered.end(), g.groups[v].begin(), g.groups[v].end());
  }
  std::sort(result.unclustered.begin(), result.unclustered.end());
  return result;
}

SchematicTable BuildSchematicTable(std::span<const PredicateCycle> cycles,
                                   std::span<const SelectionPredicate> predicates) {
  SchematicTable table;
  std::set<std::string> attributes;
  for (const auto& p : predicates) attributes.insert(p.attribute);
  table.attributes.assign(attributes.begin(), attributes.end());
  for (const auto& cycle : cycles) {
    std::vector<bool> row(table.attributes.size());
    for (size_t m : cycle.members) {
      const auto it = std::lower_bound(table.attributes.begin(), table.attributes.end(), predicates[m].attribute);
      row[static_cast<size_t>(it - table.attributes.begin())] = true;
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

TermComposition ComposePredicateTerms(const SchematicTable& table, std::span<const PredicateCycle> cycles,
                                      std::span<const SelectionPredicate> predicates) {
  TermComposition out;
  for (size_t c = 0; c < cycles.size(); ++c) {
    std::vector<std::vector<SelectionPredicate>> choices;  // per attribute
    for (size_t a = 0; a < table.attributes.size(); ++a) {
      const std::string& attribute = table.attributes[a];
      std::vector<SelectionPredicate> on_attribute;
      if (table.cells[c][a]) {
        for (size_t m : cycles[c].members) {
          if (predicates[m].attribute == attribute) on_attribute.push_back(predicates[m]);
        }
      } else {
        for (const auto& p : predicates) {
          if (p.attribute == attribute) on_attribute.push_back(p);
        }
      }
      choices.push_back(std::move(on_attribute));
    }
    std::vector<size_t> index(choices.size(), 0);
    while (true) {
      PredicateTerm term{{}, cycles[c].cycle_id};
      for (size_t k = 0; k < choices.size(); ++k) term.conjuncts.push_back(choices[k][index[k]]);
      out.terms.push_back(std::move(term));
      size_t k = choices.size();
      while (k > 0 && ++index[k - 1] == choices[k - 1].size()) index[--k] = 0;
      if (k == 0) break;
    }
  }
  if (out.terms.empty()) {
    out.else_predicate = Condition::True();
  } else {
    std::vector<Condition> any;
    for (const auto& t : out.terms) any.push_back(t.ToCondition());
    out.else_predicate = Condition::Not(Condition::Or(std::move(any)));
  }
  return out;
}

DimensionFragmentation FragmentDimensionAb(const DimensionDoc& dim, const TermComposition& composition) {
  const auto& terms = composition.terms;
  std::vector<Condition> term_conditions;
  for (const auto& t : terms) term_conditions.push_back(t.ToCondition());

  std::vector<std::set<std::string>> members(terms.size() + 1);
  for (const Instance* instance : dim.AllInstances()) {
    size_t k = 0;
    while (k < terms.size() && !term_conditions[k].Evaluate(*instance)) ++k;
    members[k].insert(instance->instance_id);
  }

  DimensionFragmentation result;
  for (size_t k = 0; k <= terms.size(); ++k) {
    const bool is_else = k == terms.size();
    std::string id = dim.dim_id + (is_else ? "_else" : "_t" + std::to_string(k + 1));
    Condition predicate;
    if (is_else) {
      predicate = composition.else_predicate;
    } else {
      std::vector<Condition> parts{term_conditions[k]};
      for (size_t j = 0; j < k; ++j) {
        // Earlier terms disjoint from t_k cannot steal its instances.
        if (IsSatisfiable(Condition::And({term_conditions[j], term_conditions[k]}))) {
          parts.push_back(Condition::Not(term_conditions[j]));
        }
      }
      predicate = Condition::And(std::move(parts));
    }
    if (members[k].empty()) {
      result.dropped_empty.push_back(id + ": " + predicate.ToString());
      continue;
    }
    result.fragments.push_back({std::move(id), dim.dim_id, std::move(predicate), std::move(members[k])});
  }
  return result;
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string PumToCsv(const PredicateUsageMatrix& pum) {
  std::ostringstream out;
  out << "query";
  for (size_t j = 0; j < pum.n_predicates; ++j) out << ",p" << j + 1;
  out << ",freq\n";
  for (size_t i = 0; i < pum.cells.size(); ++i) {
    out << CsvField(pum.query_ids[i]);
    for (bool used : pum.cells[i]) out << ',' << (used ? 1 : 0);
    out << ',' << pum.freq[i] << '\n';
  }
  return out.str();
}

std::string AffinityToCsv(const AffinityMatrix& affinity, std::span<const SelectionPredicate> predicates) {
  std::ostringstream out;
  out << "predicate,label";
  for (size_t j = 0; j < affinity.size(); ++j) out << ",p" << j + 1;
  out << '\n';
  for (size_t i = 0; i < affinity.size(); ++i) {
    out << 'p' << i + 1 << ',' << CsvField(DescribePredicate(predicates[i]));
    for (const auto& cell : affinity.cells[i]) {
      switch (cell.kind) {
        case AffinityCell::Kind::kNumeric: out << ',' << cell.value; break;
        case AffinityCell::Kind::kImplies: out << ",=>"; break;
        case AffinityCell::Kind::kImpliedBy: out << ",<="; break;
        case AffinityCell::Kind::kSimilar: out << ",*"; break;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace xwfrag
