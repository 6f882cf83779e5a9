#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "xwfrag/fact_frag.h"
#include "xwfrag/generator.h"

namespace xwfrag {

struct SeriesSpec {
  std::vector<uint64_t> sizes{1000, 2000, 3000, 4000, 5000};
  std::vector<Method> methods{Method::kPc, Method::kAb};
  ConfigPreset preset = FindPreset("config2");  // workload shape and dimension sizes
  uint64_t seed = 1;
  size_t repeats = 3;
  std::filesystem::path workdir;
};

struct SeriesPoint {
  uint64_t facts = 0;
  Method method = Method::kPc;
  double gain_pct = 0;
  size_t fragments = 0;
};

// One benchmark per (size, method). Dimensions and workload come from the
// base seed; the fact stream of each size is seeded from (seed, size).
// Collections are written under <workdir>/<size>/.
std::vector<SeriesPoint> RunGainSeries(const SeriesSpec& spec);

std::string SeriesToCsv(const std::vector<SeriesPoint>& points);  // facts,method,gain_pct

}  // namespace xwfrag
