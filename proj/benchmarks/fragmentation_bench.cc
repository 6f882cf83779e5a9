#include <benchmark/benchmark.h>

#include "xwfrag/condition.h"
#include "xwfrag/exec.h"
#include "xwfrag/fact_frag.h"
#include "xwfrag/frag_ab.h"
#include "xwfrag/frag_pc.h"
#include "xwfrag/generator.h"
#include "xwfrag/workload.h"

namespace xwfrag {
namespace {

const GeneratedConfig& Config2() {
  static const GeneratedConfig config = GeneratePreset(FindPreset("config2"), 1);
  return config;
}

std::vector<SelectionPredicate> PredicatesOn(const std::string& dim_id) {
  const auto& c = Config2();
  return AttributePredicates(ExtractSelectionPredicates(c.workload), c.warehouse.meta).at(dim_id);
}

void BM_GenerateMinterms(benchmark::State& state) {
  const auto predicates = PredicatesOn("Customer");
  for (auto _ : state) benchmark::DoNotOptimize(GenerateMinterms(predicates));
}
BENCHMARK(BM_GenerateMinterms);

void BM_ComMin(benchmark::State& state) {
  const auto predicates = PredicatesOn("Customer");
  const DimensionDoc& dim = Config2().warehouse.dimensions.at("Customer");
  for (auto _ : state) benchmark::DoNotOptimize(ComMin(predicates, dim));
}
BENCHMARK(BM_ComMin);

void BM_AffinityAndClustering(benchmark::State& state) {
  const auto predicates = PredicatesOn("Customer");
  const PredicateUsageMatrix pum = BuildPum(Config2().workload, predicates);
  for (auto _ : state) benchmark::DoNotOptimize(ClusterPredicates(BuildAffinity(pum, predicates)));
}
BENCHMARK(BM_AffinityAndClustering);

void BM_EvaluateQuery(benchmark::State& state) {
  const auto& c = Config2();
  const Query& q = c.workload.queries[static_cast<size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(EvaluateQuery(q, c.warehouse));
}
BENCHMARK(BM_EvaluateQuery)->Arg(0)->Arg(5);

void BM_RouteQuery(benchmark::State& state) {
  const auto& c = Config2();
  static const FragmentationResult pc = FragmentWarehouse(c.warehouse, c.workload, Method::kPc);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RouteQuery(c.workload.queries[i], pc.schema));
    i = (i + 1) % c.workload.queries.size();
  }
}
BENCHMARK(BM_RouteQuery);

void BM_ParseWorkload(benchmark::State& state) {
  const auto& c = Config2();
  const std::string text = PrintWorkload(c.workload);
  for (auto _ : state) benchmark::DoNotOptimize(ParseWorkload(text, c.warehouse.meta));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseWorkload);

void BM_FragmentWarehouse(benchmark::State& state) {
  const auto& c = Config2();
  const Method method = state.range(0) == 0 ? Method::kPc : Method::kAb;
  for (auto _ : state) benchmark::DoNotOptimize(FragmentWarehouse(c.warehouse, c.workload, method));
}
BENCHMARK(BM_FragmentWarehouse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace xwfrag

BENCHMARK_MAIN();
