#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "xwfrag/warehouse.h"
#include "xwfrag/workload.h"

namespace xwfrag {

struct ConfigPreset {
  std::string name;
  uint64_t n_facts = 0;
  uint64_t n_queries = 0;
  uint64_t n_joins = 0;
  uint64_t n_predicates = 0;
  std::map<std::string, uint64_t> dim_sizes;

  bool operator==(const ConfigPreset&) const = default;
};

// Instance counts of the full benchmark warehouse.
const std::map<std::string, uint64_t>& XwebDimensionSizes();
inline constexpr uint64_t kXwebFacts = 7000;

// config1, config2, config3 and xweb (7000 facts, config2 workload shape).
const std::vector<ConfigPreset>& BuiltinPresets();
// Throws InvalidArgument for unknown names.
const ConfigPreset& FindPreset(const std::string& name);

// INI-style file, one section per preset:
//
//   [config1]
//   facts = 800
//   queries = 13
//   joins = 22
//   predicates = 20
//   ; optional dimension sizes, default to the full sizes
//   Customer = 1000
//
// Throws IoError or InvalidSpec.
std::vector<ConfigPreset> LoadPresets(const std::filesystem::path& path);

struct GeneratedConfig {
  Warehouse warehouse;
  Workload workload;
};

// Workload drawn against the generated dimensions: every predicate has a
// selectivity within [5%, 50%], at least two attributes per targeted
// dimension, at most one predicate per attribute in a query, and exactly the
// preset's counts. Depends on the seed and the dimension contents only, so
// presets differing in n_facts share their workload. Throws InvalidSpec.
GeneratedConfig GeneratePreset(const ConfigPreset& preset, uint64_t seed);
Workload GenerateWorkload(const Warehouse& warehouse, const ConfigPreset& preset, uint64_t seed);

Warehouse GenerateXwebFull(uint64_t seed);

}  // namespace xwfrag
