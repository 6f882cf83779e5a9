#include "xwfrag/series.h"

#include <cstdio>
#include <sstream>

#include "random.h"
#include "xwfrag/error.h"
#include "xwfrag/exec.h"

namespace xwfrag {

std::vector<SeriesPoint> RunGainSeries(const SeriesSpec& spec) {
  if (spec.workdir.empty()) throw Error(ErrorCode::kInvalidArgument, "gain series needs a work directory");
  std::vector<SeriesPoint> points;
  for (uint64_t size : spec.sizes) {
    const GenSpec gen{size, spec.preset.dim_sizes, spec.seed, internal::SplitMix(spec.seed ^ size)};
    const Warehouse warehouse = GenerateWarehouse(gen);
    const Workload workload = GenerateWorkload(warehouse, spec.preset, spec.seed);
    const auto dir = spec.workdir / std::to_string(size);
    SerializeWarehouse(warehouse, dir / "mono");
    for (Method method : spec.methods) {
      const FragmentationResult result = FragmentWarehouse(warehouse, workload, method);
      const auto frag_dir = dir / MethodName(method);
      MaterializeFragments(warehouse, result, frag_dir);
      const BenchReport report = RunBenchmark(dir / "mono", frag_dir, workload, spec.repeats);
      points.push_back({size, method, report.MeanGain(), result.fragments.size()});
    }
  }
  return points;
}

std::string SeriesToCsv(const std::vector<SeriesPoint>& points) {
  std::ostringstream out;
  out << "facts,method,gain_pct\n";
  char gain[32];
  for (const auto& p : points) {
    std::snprintf(gain, sizeof gain, "%.2f", p.gain_pct);
    out << p.facts << ',' << MethodName(p.method) << ',' << gain << '\n';
  }
  return out.str();
}

}  // namespace xwfrag
