#include "xwfrag/fact_frag.h"

#include <algorithm>
#include <regex>
#include <system_error>
#include <unordered_map>

#include "xwfrag/error.h"

namespace xwfrag {

namespace fs = std::filesystem;

const char* MethodName(Method method) { return method == Method::kPc ? "PC" : "AB"; }

Method ParseMethod(std::string_view text) {
  if (text == "pc" || text == "PC") return Method::kPc;
  if (text == "ab" || text == "AB") return Method::kAb;
  throw Error(ErrorCode::kInvalidArgument, "unknown fragmentation method '" + std::string(text) + "'");
}

Condition SchemaFragment::DimensionCondition(const std::string& dim_id) const {
  auto it = predicates.find(dim_id);
  if (it == predicates.end()) return Condition::True();
  return Condition::And(it->second);
}

std::vector<WarehouseFragment> FragmentFacts(
    const FactDoc& facts, const std::map<std::string, std::vector<DimensionFragment>>& dim_fragments) {
  // instance id -> fragment index, per fragmented dimension
  std::vector<std::pair<const std::string*, std::unordered_map<std::string, size_t>>> lookup;
  for (const auto& [dim_id, fragments] : dim_fragments) {
    std::unordered_map<std::string, size_t> owner;
    for (size_t k = 0; k < fragments.size(); ++k) {
      for (const auto& id : fragments[k].instance_ids) owner.emplace(id, k);
    }
    lookup.emplace_back(&dim_id, std::move(owner));
  }

  std::map<std::vector<size_t>, std::set<std::string>> cells;
  for (const auto& fact : facts.facts) {
    std::vector<size_t> key;
    for (const auto& [dim_id, owner] : lookup) {
      auto ref = fact.dim_refs.find(*dim_id);
      if (ref == fact.dim_refs.end()) {
        throw Error(ErrorCode::kIntegrityViolation, "fact '" + fact.fact_id + "' has no reference to " + *dim_id);
      }
      auto it = owner.find(ref->second);
      if (it == owner.end()) {
        throw Error(ErrorCode::kIntegrityViolation, "fact '" + fact.fact_id + "' references " + *dim_id +
                                                        " instance '" + ref->second + "' held by no fragment");
      }
      key.push_back(it->second);
    }
    cells[key].insert(fact.fact_id);
  }

  std::vector<WarehouseFragment> out;
  for (auto& [key, fact_ids] : cells) {
    WarehouseFragment fragment;
    fragment.fragment_id = "f" + std::to_string(out.size() + 1);
    size_t i = 0;
    for (const auto& [dim_id, fragments] : dim_fragments) fragment.dim_parts.emplace(dim_id, fragments[key[i++]]);
    fragment.fact_ids = std::move(fact_ids);
    out.push_back(std::move(fragment));
  }
  return out;
}

FragmentationSchema MakeSchema(Method method, const std::vector<WarehouseFragment>& fragments) {
  FragmentationSchema schema{method, {}};
  for (const auto& f : fragments) {
    SchemaFragment sf{f.fragment_id, {}};
    for (const auto& [dim_id, part] : f.dim_parts) sf.predicates.emplace(dim_id, part.predicate.Conjuncts());
    schema.fragments.push_back(std::move(sf));
  }
  return schema;
}

namespace {

DimensionReport FragmentDimension(const DimensionDoc& dim, std::vector<SelectionPredicate> predicates,
                                  const Workload& workload, Method method) {
  DimensionReport report;
  report.dim_id = dim.dim_id;
  std::sort(predicates.begin(), predicates.end());
  report.predicates = predicates;
  if (method == Method::kPc) {
    report.reduced = ComMin(predicates, dim);
    const auto minterms = GenerateMinterms(report.reduced);
    report.n_minterms = minterms.size();
    report.fragmentation = FragmentDimensionPc(dim, minterms);
  } else {
    report.pum = BuildPum(workload, predicates);
    report.affinity = BuildAffinity(*report.pum, predicates);
    report.clustering = ClusterPredicates(*report.affinity);
    const auto table = BuildSchematicTable(report.clustering->cycles, predicates);
    const auto composition = ComposePredicateTerms(table, report.clustering->cycles, predicates);
    report.n_terms = composition.terms.size();
    report.fragmentation = FragmentDimensionAb(dim, composition);
  }
  return report;
}

}  // namespace

FragmentationResult FragmentWarehouse(const Warehouse& warehouse, const Workload& workload, Method method) {
  if (warehouse.facts.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "fragmentation needs a warehouse with exactly one fact set, found " +
                                                 std::to_string(warehouse.facts.size()));
  }
  FragmentationResult result;
  result.method = method;
  result.fact_set = warehouse.facts.front().fact_set;
  const FactSetMeta* fact_meta = warehouse.meta.FindFactSet(result.fact_set);
  if (fact_meta == nullptr) {
    throw Error(ErrorCode::kIntegrityViolation, "fact set '" + result.fact_set + "' is not declared in the model");
  }

  auto by_dim = AttributePredicates(ExtractSelectionPredicates(workload), warehouse.meta);
  std::map<std::string, std::vector<DimensionFragment>> dim_fragments;
  for (auto& [dim_id, predicates] : by_dim) {
    const auto& refs = fact_meta->dim_refs;
    if (std::find(refs.begin(), refs.end(), dim_id) == refs.end()) continue;
    auto doc = warehouse.dimensions.find(dim_id);
    if (doc == warehouse.dimensions.end()) {
      throw Error(ErrorCode::kMissingDocument, "no document for dimension " + dim_id);
    }
    result.dimensions.push_back(FragmentDimension(doc->second, std::move(predicates), workload, method));
    dim_fragments.emplace(dim_id, result.dimensions.back().fragmentation.fragments);
  }
  if (result.dimensions.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no candidate dimensions: the workload selects nothing on the dimensions of '" +
                                                 result.fact_set + "'");
  }
  result.fragments = FragmentFacts(warehouse.facts.front(), dim_fragments);
  result.schema = MakeSchema(method, result.fragments);
  return result;
}

XmlElement SchemaToXml(const FragmentationSchema& schema) {
  XmlElement root("Schema");
  root.Attr("method", MethodName(schema.method));
  for (const auto& f : schema.fragments) {
    XmlElement& fragment = root.Append(XmlElement("fragment"));
    fragment.Attr("id", f.fragment_id);
    for (const auto& [dim_id, conjuncts] : f.predicates) {
      XmlElement& dim = fragment.Append(XmlElement("dimension"));
      dim.Attr("name", dim_id);
      for (const auto& c : conjuncts) dim.Append(XmlElement("predicate")).text = c.ToString();
    }
  }
  return root;
}

FragmentationSchema SchemaFromXml(const XmlElement& root) {
  if (root.name != "Schema") {
    throw Error(ErrorCode::kMalformedXml, "expected <Schema>, found <" + root.name + ">", root.line);
  }
  FragmentationSchema schema;
  if (const std::string* method = root.FindAttribute("method")) schema.method = ParseMethod(*method);
  std::set<std::string> seen;
  for (const auto& f : root.children) {
    SchemaFragment sf{f.RequireAttribute("id"), {}};
    if (!seen.insert(sf.fragment_id).second) {
      throw Error(ErrorCode::kMalformedXml, "duplicate fragment id '" + sf.fragment_id + "'", f.line);
    }
    for (const auto& d : f.children) {
      const std::string& dim_id = d.RequireAttribute("name");
      auto& conjuncts = sf.predicates[dim_id];
      for (const auto& p : d.children) conjuncts.push_back(ParseCondition(p.text, dim_id));
    }
    schema.fragments.push_back(std::move(sf));
  }
  return schema;
}

FragmentationSchema LoadSchema(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kMissingDocument, "missing " + path.string());
  return SchemaFromXml(ParseXmlFile(path));
}

namespace {

DimensionDoc RestrictDimension(const DimensionDoc& dim, const std::set<std::string>& keep) {
  DimensionDoc out{dim.dim_id, {}};
  for (const auto& level : dim.levels) {
    Level copy{level.level_id, {}};
    for (const auto& inst : level.instances) {
      if (!keep.contains(inst.instance_id)) continue;
      Instance i = inst;
      if (i.roll_up && !keep.contains(*i.roll_up)) i.roll_up.reset();
      if (i.drill_down && !keep.contains(*i.drill_down)) i.drill_down.reset();
      copy.instances.push_back(std::move(i));
    }
    out.levels.push_back(std::move(copy));
  }
  return out;
}

FactDoc RestrictFacts(const FactDoc& facts, const std::set<std::string>& keep) {
  FactDoc out{facts.fact_set, {}};
  for (const auto& f : facts.facts) {
    if (keep.contains(f.fact_id)) out.facts.push_back(f);
  }
  return out;
}

void LinkOrCopy(const fs::path& from, const fs::path& to) {
  std::error_code ec;
  fs::create_hard_link(from, to, ec);
  if (!ec) return;
  fs::copy_file(from, to, fs::copy_options::overwrite_existing, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot copy " + from.string() + " to " + to.string() + ": " + ec.message());
}

}  // namespace

Warehouse BuildFragmentWarehouse(const Warehouse& warehouse, const WarehouseFragment& fragment) {
  Warehouse out;
  out.meta = warehouse.meta;
  for (const auto& facts : warehouse.facts) out.facts.push_back(RestrictFacts(facts, fragment.fact_ids));
  for (const auto& [dim_id, dim] : warehouse.dimensions) {
    auto part = fragment.dim_parts.find(dim_id);
    out.dimensions.emplace(dim_id, part == fragment.dim_parts.end() ? dim
                                                                    : RestrictDimension(dim, part->second.instance_ids));
  }
  return out;
}

void MaterializeFragments(const Warehouse& warehouse, const FragmentationResult& result, const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out.string() + ": " + ec.message());

  static const std::regex kCollectionName("f[0-9]+");
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.is_directory() && std::regex_match(entry.path().filename().string(), kCollectionName) &&
        fs::exists(entry.path() / kModelFileName)) {
      fs::remove_all(entry.path(), ec);
      if (ec) throw Error(ErrorCode::kIoError, "cannot remove " + entry.path().string() + ": " + ec.message());
    }
  }
  WriteXmlFile(SchemaToXml(result.schema), out / kSchemaFileName);

  // Files every collection shares: the model and each unfragmented dimension.
  std::vector<std::string> shared{kModelFileName};
  std::map<std::string, XmlElement> shared_docs{{kModelFileName, ModelToXml(warehouse.meta)}};
  for (const auto& [dim_id, dim] : warehouse.dimensions) {
    const bool fragmented = std::any_of(result.dimensions.begin(), result.dimensions.end(),
                                        [&](const DimensionReport& r) { return r.dim_id == dim_id; });
    if (!fragmented) {
      shared.push_back(DimensionFileName(dim_id));
      shared_docs.emplace(shared.back(), DimensionToXml(dim));
    }
  }

  std::optional<fs::path> first;
  for (const auto& fragment : result.fragments) {
    const fs::path dir = out / fragment.fragment_id;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
    for (const auto& name : shared) {
      if (first) {
        LinkOrCopy(*first / name, dir / name);
      } else {
        WriteXmlFile(shared_docs.at(name), dir / name);
      }
    }
    if (!first) first = dir;
    for (const auto& facts : warehouse.facts) {
      WriteXmlFile(FactDocToXml(RestrictFacts(facts, fragment.fact_ids)), dir / FactsFileName(facts.fact_set));
    }
    for (const auto& [dim_id, part] : fragment.dim_parts) {
      WriteXmlFile(DimensionToXml(RestrictDimension(warehouse.dimensions.at(dim_id), part.instance_ids)),
                   dir / DimensionFileName(dim_id));
    }
  }
}

std::vector<Violation> VerifyFragmentation(const Warehouse& warehouse, const FragmentationResult& result) {
  std::vector<Violation> out;
  auto report = [&](std::string location, std::string message) { out.push_back({std::move(location), std::move(message)}); };

  // Dimension fragments: complete, disjoint, predicates select their members.
  for (const auto& dim_report : result.dimensions) {
    const DimensionDoc& dim = warehouse.dimensions.at(dim_report.dim_id);
    std::unordered_map<std::string, int> owners;
    for (const auto& fragment : dim_report.fragmentation.fragments) {
      for (const auto& id : fragment.instance_ids) ++owners[id];
    }
    for (const Instance* inst : dim.AllInstances()) {
      const int n = owners.contains(inst->instance_id) ? owners[inst->instance_id] : 0;
      if (n != 1) {
        report(dim_report.dim_id + "/" + inst->instance_id, "instance held by " + std::to_string(n) + " fragments");
      }
      for (const auto& fragment : dim_report.fragmentation.fragments) {
        if (fragment.predicate.Evaluate(*inst) != fragment.instance_ids.contains(inst->instance_id)) {
          report(fragment.fragment_id + "/" + inst->instance_id, "predicate disagrees with membership");
        }
      }
    }
    if (owners.size() != dim.InstanceCount()) report(dim_report.dim_id, "fragments hold unknown instances");
  }

  // Facts: each in exactly one fragment, inside that fragment's dimension parts.
  const FactDoc* facts = warehouse.FindFacts(result.fact_set);
  if (facts == nullptr) {
    report(result.fact_set, "fact set missing from warehouse");
    return out;
  }
  std::unordered_map<std::string, const Fact*> fact_by_id;
  for (const auto& f : facts->facts) fact_by_id.emplace(f.fact_id, &f);
  std::unordered_map<std::string, int> fact_owners;
  for (const auto& fragment : result.fragments) {
    for (const auto& id : fragment.fact_ids) {
      ++fact_owners[id];
      auto it = fact_by_id.find(id);
      if (it == fact_by_id.end()) {
        report(fragment.fragment_id + "/" + id, "unknown fact");
        continue;
      }
      for (const auto& [dim_id, part] : fragment.dim_parts) {
        auto ref = it->second->dim_refs.find(dim_id);
        if (ref == it->second->dim_refs.end() || !part.instance_ids.contains(ref->second)) {
          report(fragment.fragment_id + "/" + id, "fact outside the fragment's " + dim_id + " part");
        }
      }
    }
  }
  for (const auto& f : facts->facts) {
    const int n = fact_owners.contains(f.fact_id) ? fact_owners[f.fact_id] : 0;
    if (n != 1) report(result.fact_set + "/" + f.fact_id, "fact held by " + std::to_string(n) + " fragments");
  }

  // Schema fidelity, through the serialized form.
  const FragmentationSchema schema = SchemaFromXml(ParseXml(WriteXml(SchemaToXml(result.schema)), kSchemaFileName));
  if (!(schema == result.schema)) report(kSchemaFileName, "schema does not survive a serialization round trip");
  if (schema.fragments.size() != result.fragments.size()) {
    report(kSchemaFileName, "fragment count differs from the fragmentation");
    return out;
  }
  std::map<std::pair<std::string, std::string>, std::set<std::string>> selected;  // (dim, text) -> members
  for (size_t k = 0; k < schema.fragments.size(); ++k) {
    const SchemaFragment& sf = schema.fragments[k];
    const WarehouseFragment& wf = result.fragments[k];
    if (sf.fragment_id != wf.fragment_id) report(sf.fragment_id, "fragment order differs from the fragmentation");
    for (const auto& [dim_id, part] : wf.dim_parts) {
      const Condition condition = sf.DimensionCondition(dim_id);
      auto [it, inserted] = selected.try_emplace({dim_id, condition.ToString()});
      if (inserted) {
        for (const Instance* inst : warehouse.dimensions.at(dim_id).AllInstances()) {
          if (condition.Evaluate(*inst)) it->second.insert(inst->instance_id);
        }
      }
      if (it->second != part.instance_ids) {
        report(sf.fragment_id + "/" + dim_id, "stored predicates do not reproduce the fragment's instances");
      }
    }
  }
  return out;
}

}  // namespace xwfrag
