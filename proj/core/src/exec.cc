#include "xwfrag/exec.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "xwfrag/condition.h"
#include "xwfrag/error.h"

namespace xwfrag {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Dimensions a query touches: its joins plus any selected dimension.
std::vector<std::string> QueryDimensions(const Query& query) {
  std::vector<std::string> dims;
  for (const auto& j : query.joins) dims.push_back(j.dim_id);
  for (const auto& s : query.selections) dims.push_back(s.dim_id);
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  return dims;
}

std::string QueryFactSet(const Query& query) {
  if (query.joins.empty()) throw Error(ErrorCode::kInvalidArgument, "query '" + query.query_id + "' joins nothing");
  return query.fact_set();
}

}  // namespace

QueryResult EvaluateQuery(const Query& query, const Warehouse& warehouse) {
  const auto start = Clock::now();
  QueryResult result{query.query_id, {}, {}};
  const FactDoc* facts = warehouse.FindFacts(QueryFactSet(query));
  if (facts == nullptr) throw Error(ErrorCode::kUnknownDimension, "unknown fact set '" + query.fact_set() + "'");

  struct Filter {
    std::string dim_id;
    std::unordered_set<std::string> ids;
  };
  std::vector<Filter> filters;
  for (const auto& dim_id : QueryDimensions(query)) {
    const DimensionMeta* meta = warehouse.meta.FindDimension(dim_id);
    auto doc = warehouse.dimensions.find(dim_id);
    if (meta == nullptr || doc == warehouse.dimensions.end()) {
      throw Error(ErrorCode::kUnknownDimension, "unknown dimension '" + dim_id + "'");
    }
    const auto selections = query.SelectionsOn(dim_id);
    for (const auto& s : selections) {
      if (!meta->HasAttribute(s.attribute)) {
        throw Error(ErrorCode::kUnknownAttribute, "dimension " + dim_id + " has no attribute '" + s.attribute + "'");
      }
    }
    Filter filter{dim_id, {}};
    for (const Instance* inst : doc->second.AllInstances()) {
      if (std::all_of(selections.begin(), selections.end(), [&](const SelectionPredicate& s) { return s.Evaluate(*inst); })) {
        filter.ids.insert(inst->instance_id);
      }
    }
    filters.push_back(std::move(filter));
  }

  for (const auto& fact : facts->facts) {
    const bool match = std::all_of(filters.begin(), filters.end(), [&](const Filter& f) {
      auto ref = fact.dim_refs.find(f.dim_id);
      return ref != fact.dim_refs.end() && f.ids.contains(ref->second);
    });
    if (match) result.fact_ids.insert(fact.fact_id);
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return result;
}

std::vector<std::string> RouteQuery(const Query& query, const FragmentationSchema& schema) {
  std::map<std::string, std::vector<Condition>> query_conditions;
  for (const auto& s : query.selections) query_conditions[s.dim_id].push_back(Condition::Atom(s));
  std::vector<std::string> routed;
  for (const auto& fragment : schema.fragments) {
    bool relevant = true;
    for (const auto& [dim_id, conjuncts] : fragment.predicates) {
      auto q = query_conditions.find(dim_id);
      if (q == query_conditions.end() || conjuncts.empty()) continue;
      std::vector<Condition> both = q->second;
      both.insert(both.end(), conjuncts.begin(), conjuncts.end());
      if (!IsSatisfiable(Condition::And(std::move(both)))) {
        relevant = false;
        break;
      }
    }
    if (relevant) routed.push_back(fragment.fragment_id);
  }
  return routed;
}

double BenchReport::MeanGain() const {
  if (rows.empty()) return 0;
  double sum = 0;
  for (const auto& r : rows) sum += r.gain_pct;
  return sum / static_cast<double>(rows.size());
}

double BenchReport::PositiveGainShare() const {
  if (rows.empty()) return 0;
  const auto n = std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.gain_pct > 0; });
  return static_cast<double>(n) / static_cast<double>(rows.size());
}

std::string BenchReport::ToCsv() const {
  std::ostringstream out;
  out << "query_id,t_mono_ns,t_frag_par_ns,t_frag_ser_ns,fragments_touched,gain_pct\n";
  char gain[32];
  for (const auto& r : rows) {
    std::snprintf(gain, sizeof gain, "%.2f", r.gain_pct);
    out << r.query_id << ',' << r.t_mono_ns << ',' << r.t_frag_par_ns << ',' << r.t_frag_ser_ns << ','
        << r.fragments_touched << ',' << gain << '\n';
  }
  return out.str();
}

std::string BenchReport::Summary() const {
  char line[160];
  std::snprintf(line, sizeof line, "%s: %zu fragments, %zu queries, mean gain %.2f%%, positive gain on %.0f%% of queries",
                method.c_str(), total_fragments, rows.size(), MeanGain(), PositiveGainShare() * 100);
  return line;
}

namespace {

QueryResult TimedColdRun(const fs::path& dir, const Query& query) {
  const auto start = Clock::now();
  const Warehouse w = LoadWarehousePartial(dir, query.fact_set(), QueryDimensions(query));
  QueryResult result = EvaluateQuery(query, w);
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return result;
}

int64_t Median(std::vector<int64_t> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

std::string MismatchMessage(const Query& query, const std::set<std::string>& mono, const std::set<std::string>& frag) {
  return "query '" + query.query_id + "' returns " + std::to_string(mono.size()) +
         " facts on the warehouse but " + std::to_string(frag.size()) + " over its fragments";
}

}  // namespace

BenchReport RunBenchmark(const fs::path& mono_dir, const fs::path& frag_dir, const Workload& workload,
                         size_t repeats) {
  if (repeats == 0) throw Error(ErrorCode::kInvalidArgument, "repeats must be at least 1");
  const FragmentationSchema schema = LoadSchema(frag_dir / kSchemaFileName);
  BenchReport report;
  report.method = MethodName(schema.method);
  report.total_fragments = schema.fragments.size();

  for (const auto& query : workload.queries) {
    const auto routed = RouteQuery(query, schema);

    // Warm-up doubles as the equivalence check.
    const QueryResult mono = TimedColdRun(mono_dir, query);
    std::set<std::string> merged;
    for (const auto& id : routed) {
      const QueryResult part = TimedColdRun(frag_dir / id, query);
      merged.insert(part.fact_ids.begin(), part.fact_ids.end());
    }
    if (merged != mono.fact_ids) throw Error(ErrorCode::kResultMismatch, MismatchMessage(query, mono.fact_ids, merged));

    std::vector<int64_t> t_mono, t_par, t_ser;
    for (size_t r = 0; r < repeats; ++r) {
      t_mono.push_back(TimedColdRun(mono_dir, query).elapsed.count());
      int64_t par = 0, ser = 0;
      for (const auto& id : routed) {
        const int64_t t = TimedColdRun(frag_dir / id, query).elapsed.count();
        par = std::max(par, t);
        ser += t;
      }
      t_par.push_back(par);
      t_ser.push_back(ser);
    }
    BenchRow row{query.query_id, Median(t_mono), Median(t_par), Median(t_ser), routed.size(), 0};
    row.gain_pct = row.t_mono_ns > 0
                       ? static_cast<double>(row.t_mono_ns - row.t_frag_par_ns) / static_cast<double>(row.t_mono_ns) * 100
                       : 0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<std::string> CheckResultEquivalence(const Warehouse& warehouse, const FragmentationResult& result,
                                                const Workload& workload) {
  std::map<std::string, const WarehouseFragment*> by_id;
  for (const auto& f : result.fragments) by_id.emplace(f.fragment_id, &f);
  std::map<std::string, Warehouse> built;
  std::vector<std::string> failing;
  for (const auto& query : workload.queries) {
    const QueryResult mono = EvaluateQuery(query, warehouse);
    std::set<std::string> merged;
    for (const auto& id : RouteQuery(query, result.schema)) {
      auto it = built.find(id);
      if (it == built.end()) it = built.emplace(id, BuildFragmentWarehouse(warehouse, *by_id.at(id))).first;
      const QueryResult part = EvaluateQuery(query, it->second);
      merged.insert(part.fact_ids.begin(), part.fact_ids.end());
    }
    if (merged != mono.fact_ids) failing.push_back(query.query_id);
  }
  return failing;
}

}  // namespace xwfrag
