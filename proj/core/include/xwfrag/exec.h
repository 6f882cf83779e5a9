#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "xwfrag/fact_frag.h"
#include "xwfrag/warehouse.h"
#include "xwfrag/workload.h"

namespace xwfrag {

struct QueryResult {
  std::string query_id;
  std::set<std::string> fact_ids;
  std::chrono::nanoseconds elapsed{0};
};

// Filters each joined dimension by the query's selections, then scans the
// facts once. Facts lacking a reference to a joined dimension never match.
// Throws UnknownDimension/UnknownAttribute.
QueryResult EvaluateQuery(const Query& query, const Warehouse& warehouse);

// Fragments whose per-dimension predicates are jointly satisfiable with the
// query's selections on every dimension both constrain. Schema order.
std::vector<std::string> RouteQuery(const Query& query, const FragmentationSchema& schema);

struct BenchRow {
  std::string query_id;
  int64_t t_mono_ns = 0;
  int64_t t_frag_par_ns = 0;  // max over touched fragments
  int64_t t_frag_ser_ns = 0;  // sum over touched fragments
  size_t fragments_touched = 0;
  double gain_pct = 0;
};

struct BenchReport {
  std::string method;
  size_t total_fragments = 0;
  std::vector<BenchRow> rows;

  double MeanGain() const;
  double PositiveGainShare() const;  // fraction of queries with gain > 0
  std::string ToCsv() const;
  std::string Summary() const;
};

// Times every query cold: each run re-reads the documents it needs from disk
// (facts plus joined dimensions) before evaluating. A warm-up pass first
// checks that the union over routed fragments equals the monolithic result
// (ResultMismatch otherwise). Times are medians over `repeats` runs.
BenchReport RunBenchmark(const std::filesystem::path& mono_dir, const std::filesystem::path& frag_dir,
                         const Workload& workload, size_t repeats);

// In-memory counterpart of the warm-up check: every query's routed union
// equals its monolithic result. Returns the ids of failing queries.
std::vector<std::string> CheckResultEquivalence(const Warehouse& warehouse, const FragmentationResult& result,
                                                const Workload& workload);

}  // namespace xwfrag
