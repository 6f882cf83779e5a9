#include "cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "xwfrag/error.h"
#include "xwfrag/exec.h"
#include "xwfrag/fact_frag.h"
#include "xwfrag/generator.h"
#include "xwfrag/series.h"

namespace xwfrag {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string method = "pc";
  std::vector<std::string> methods;
  uint64_t seed = 1;
  size_t repeats = 3;
  std::string preset = "config1";
  std::string presets_file;
  fs::path warehouse, workload, out, mono, frags, workdir, dump;
  std::vector<uint64_t> sizes{1000, 2000, 3000, 4000, 5000};
};

ConfigPreset ResolvePreset(const Options& o) {
  if (o.presets_file.empty()) return FindPreset(o.preset);
  for (auto& p : LoadPresets(o.presets_file)) {
    if (p.name == o.preset) return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "preset '" + o.preset + "' not found in " + o.presets_file);
}

Workload LoadWorkload(const fs::path& path, const WarehouseMeta& meta, std::ostream& err) {
  if (!fs::exists(path)) throw Error(ErrorCode::kMissingDocument, "missing workload " + path.string());
  std::vector<std::string> warnings;
  Workload w = ParseWorkload(ReadFile(path), meta, &warnings);
  for (const auto& warning : warnings) err << "warning: " << warning << '\n';
  return w;
}

void Generate(const Options& o, std::ostream& out) {
  const ConfigPreset preset = ResolvePreset(o);
  const GeneratedConfig generated = GeneratePreset(preset, o.seed);
  SerializeWarehouse(generated.warehouse, o.out);
  const fs::path workload_path = o.workload.empty() ? o.out / "workload.xq" : o.workload;
  WriteFile(workload_path, PrintWorkload(generated.workload));
  out << "generated " << preset.name << " (seed " << o.seed << "): " << generated.warehouse.facts.front().facts.size()
      << " facts, " << generated.workload.queries.size() << " queries, "
      << ExtractSelectionPredicates(generated.workload).size() << " predicates -> " << o.out.string() << '\n';
}

void DumpMatrices(const FragmentationResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& d : result.dimensions) {
    if (d.pum) WriteFile(dir / ("pum_" + d.dim_id + ".csv"), PumToCsv(*d.pum));
    if (d.affinity) WriteFile(dir / ("affinity_" + d.dim_id + ".csv"), AffinityToCsv(*d.affinity, d.predicates));
  }
}

int Fragment(const Options& o, std::ostream& out, std::ostream& err) {
  const Warehouse warehouse = ParseWarehouse(o.warehouse);
  const Workload workload = LoadWorkload(o.workload, warehouse.meta, err);
  const FragmentationResult result = FragmentWarehouse(warehouse, workload, ParseMethod(o.method));
  const auto violations = VerifyFragmentation(warehouse, result);
  if (!violations.empty()) {
    for (const auto& v : violations) err << "violation: " << v.location << ": " << v.message << '\n';
    return kExitData;
  }
  MaterializeFragments(warehouse, result, o.out);
  if (!o.dump.empty()) DumpMatrices(result, o.dump);
  for (const auto& d : result.dimensions) {
    out << d.dim_id << ": " << d.predicates.size() << " predicates, ";
    if (result.method == Method::kPc) {
      out << d.reduced.size() << " after COM-MIN, " << d.n_minterms << " minterms, ";
    } else {
      out << d.clustering->cycles.size() << " cycles, " << d.n_terms << " terms, ";
    }
    out << d.fragmentation.fragments.size() << " fragments (" << d.fragmentation.dropped_empty.size()
        << " empty dropped)\n";
  }
  out << MethodName(result.method) << ": " << result.fragments.size() << " warehouse fragments -> "
      << o.out.string() << '\n';
  return kExitOk;
}

void Bench(const Options& o, std::ostream& out, std::ostream& err) {
  const WarehouseMeta meta = ModelFromXml(ParseXmlFile(o.mono / kModelFileName));
  const Workload workload = LoadWorkload(o.workload, meta, err);
  const BenchReport report = RunBenchmark(o.mono, o.frags, workload, o.repeats);
  out << report.ToCsv();
  err << report.Summary() << '\n';
}

void Series(const Options& o, std::ostream& out) {
  SeriesSpec spec;
  spec.sizes = o.sizes;
  spec.methods.clear();
  for (const auto& m : o.methods) spec.methods.push_back(ParseMethod(m));
  spec.preset = ResolvePreset(o);
  spec.seed = o.seed;
  spec.repeats = o.repeats;
  spec.workdir = o.workdir;
  out << SeriesToCsv(RunGainSeries(spec));
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"XML data warehouse fragmentation toolkit", "xwfrag"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");
  const std::vector<std::string> kMethods{"pc", "ab"};
  const std::vector<std::string> kPresets{"config1", "config2", "config3", "xweb"};

  auto* generate = app.add_subcommand("generate", "Generate a benchmark warehouse and workload from a preset");
  generate->add_option("--preset", o.preset, "Preset name")->capture_default_str();
  generate->add_option("--presets-file", o.presets_file, "INI file defining presets")->check(CLI::ExistingFile);
  generate->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", o.out, "Warehouse directory")->required();
  generate->add_option("--workload", o.workload, "Workload output file (default <out>/workload.xq)");

  auto* fragment = app.add_subcommand("fragment", "Fragment a warehouse for a workload");
  fragment->add_option("--method", o.method, "pc or ab")->check(CLI::IsMember(kMethods))->capture_default_str();
  fragment->add_option("--warehouse", o.warehouse, "Warehouse directory")->required();
  fragment->add_option("--workload", o.workload, "Workload file")->required();
  fragment->add_option("--out", o.out, "Output directory for fragment collections")->required();
  fragment->add_option("--seed", o.seed, "Accepted for symmetry; fragmentation is deterministic");
  fragment->add_option("--dump-matrices", o.dump, "Write PUM and affinity CSV files here (AB)");

  auto* bench = app.add_subcommand("bench", "Time a workload with and without fragmentation");
  bench->add_option("--mono", o.mono, "Unfragmented warehouse directory")->required();
  bench->add_option("--frags", o.frags, "Fragment collections directory")->required();
  bench->add_option("--workload", o.workload, "Workload file")->required();
  bench->add_option("--repeats", o.repeats, "Timed runs per query (median)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", o.seed, "Accepted for symmetry; benchmarking draws no random numbers");

  auto* series = app.add_subcommand("series", "Gain as a function of warehouse size");
  series->add_option("--sizes", o.sizes, "Fact counts")->delimiter(',')->capture_default_str();
  series->add_option("--method", o.methods, "pc, ab or both (repeatable)")
      ->check(CLI::IsMember(kMethods))
      ->delimiter(',');
  series->add_option("--preset", o.preset, "Workload preset")->capture_default_str();
  series->add_option("--presets-file", o.presets_file, "INI file defining presets")->check(CLI::ExistingFile);
  series->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  series->add_option("--repeats", o.repeats, "Timed runs per query (median)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  series->add_option("--workdir", o.workdir, "Scratch directory for generated collections")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) {
      if (o.presets_file.empty() &&
          std::find(kPresets.begin(), kPresets.end(), o.preset) == kPresets.end()) {
        err << "error: unknown preset '" << o.preset << "'\n";
        return kExitUsage;
      }
      Generate(o, out);
    } else if (*fragment) {
      return Fragment(o, out, err);
    } else if (*bench) {
      Bench(o, out, err);
    } else if (*series) {
      if (o.methods.empty()) o.methods = kMethods;
      if (o.preset == "config1" && series->count("--preset") == 0) o.preset = "config2";
      Series(o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace xwfrag
