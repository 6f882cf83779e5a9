#include "xwfrag/warehouse.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "random.h"
#include "xwfrag/error.h"

namespace fs = std::filesystem;

namespace xwfrag {
namespace {

using internal::HashName;
using internal::SplitMix;
using internal::UniformIndex;

constexpr std::string_view kFactsPrefix = "facts_";
constexpr std::string_view kDimensionPrefix = "dimension_";

std::string FormatMeasure(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error(ErrorCode::kInvalidArgument, "unformattable measure");
  return std::string(buf.data(), end);
}

double ParseMeasure(const std::string& text, int line) {
  double value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorCode::kMalformedXml, "measure value '" + text + "' is not a decimal", line);
  }
  return value;
}

void ExpectName(const XmlElement& e, std::string_view name) {
  if (e.name != name) {
    throw Error(ErrorCode::kMalformedXml,
                "expected <" + std::string(name) + "> but found <" + e.name + ">", e.line);
  }
}

// ---------------------------------------------------------------------------
// Generation helpers
// ---------------------------------------------------------------------------

constexpr std::array<std::string_view, 5> kRegions = {"AFRICA", "AMERICA", "ASIA", "EUROPE",
                                                      "MIDDLE EAST"};
constexpr std::array<std::string_view, 5> kSegments = {"AUTOMOBILE", "BUILDING", "FURNITURE",
                                                       "HOUSEHOLD", "MACHINERY"};
constexpr std::array<std::string_view, 20> kPartTypes = {
    "PROMO BURNISHED COPPER", "STANDARD ANODIZED TIN",  "SMALL PLATED BRASS",
    "MEDIUM POLISHED STEEL",  "LARGE BRUSHED NICKEL",   "ECONOMY ANODIZED COPPER",
    "PROMO PLATED TIN",       "STANDARD BURNISHED BRASS", "SMALL POLISHED NICKEL",
    "MEDIUM BRUSHED COPPER",  "LARGE ANODIZED STEEL",   "ECONOMY PLATED NICKEL",
    "PROMO POLISHED BRASS",   "STANDARD BRUSHED STEEL", "SMALL ANODIZED COPPER",
    "MEDIUM PLATED TIN",      "LARGE BURNISHED BRASS",  "ECONOMY POLISHED TIN",
    "PROMO BRUSHED STEEL",    "STANDARD PLATED COPPER"};
constexpr std::array<std::string_view, 7> kDayNames = {"Monday",   "Tuesday", "Wednesday", "Thursday",
                                                       "Friday",   "Saturday", "Sunday"};
constexpr int kNations = 25;

struct DimensionTemplate {
  std::string_view dim_id;
  std::string_view level_id;
  std::string_view id_prefix;
  std::vector<std::string> attributes;
};

const std::vector<DimensionTemplate>& Templates() {
  static const std::vector<DimensionTemplate> templates = {
      {"Customer", "customer", "c", {"c_mktsegment", "c_name", "c_nation_key", "c_region"}},
      {"Supplier", "supplier", "s", {"s_name", "s_nation_key", "s_region"}},
      {"Date", "day", "d", {"d_date", "d_date_name", "d_month", "d_year"}},
      {"Part", "part", "p", {"p_brand", "p_name", "p_size", "p_type"}},
  };
  return templates;
}

std::string Pick(std::mt19937_64& rng, auto const& pool) {
  return std::string(pool[UniformIndex(rng, pool.size())]);
}

// Civil date from days since 1992-01-01 (proleptic Gregorian).
struct CivilDate {
  int year, month, day;
};

CivilDate DaysToCivil(int64_t days_since_1992) {
  // Howard Hinnant's days_from_civil inverse, epoch shifted to 1970-01-01.
  int64_t z = days_since_1992 + 8035 + 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const int64_t doe = z - era * 146097;
  const int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const int64_t mp = (5 * doy + 2) / 153;
  const int day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  const int month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  const int year = static_cast<int>(yoe + era * 400 + (month <= 2));
  return {year, month, day};
}

std::string TwoDigits(int v) { return (v < 10 ? "0" : "") + std::to_string(v); }

Instance MakeInstance(const DimensionTemplate& t, uint64_t index, std::mt19937_64& rng) {
  Instance inst;
  inst.instance_id = std::string(t.id_prefix) + std::to_string(index + 1);
  auto& a = inst.attributes;
  if (t.dim_id == "Customer") {
    const int nation = static_cast<int>(UniformIndex(rng, kNations));
    a["c_name"] = "Customer#" + std::to_string(index + 1);
    a["c_nation_key"] = std::to_string(nation);
    a["c_region"] = std::string(kRegions[static_cast<size_t>(nation) % kRegions.size()]);
    a["c_mktsegment"] = Pick(rng, kSegments);
  } else if (t.dim_id == "Supplier") {
    const int nation = static_cast<int>(UniformIndex(rng, kNations));
    a["s_name"] = "Supplier#" + std::to_string(index + 1);
    a["s_nation_key"] = std::to_string(nation);
    a["s_region"] = std::string(kRegions[static_cast<size_t>(nation) % kRegions.size()]);
  } else if (t.dim_id == "Date") {
    // 1992-01-01 was a Wednesday.
    const CivilDate date = DaysToCivil(static_cast<int64_t>(index));
    a["d_date"] = std::to_string(date.year) + "-" + TwoDigits(date.month) + "-" + TwoDigits(date.day);
    a["d_date_name"] = std::string(kDayNames[(index + 2) % kDayNames.size()]);
    a["d_month"] = std::to_string(date.month);
    a["d_year"] = std::to_string(date.year);
  } else if (t.dim_id == "Part") {
    a["p_name"] = "Part#" + std::to_string(index + 1);
    a["p_type"] = Pick(rng, kPartTypes);
    a["p_brand"] = "Brand#" + std::to_string(1 + UniformIndex(rng, 5));
    a["p_size"] = std::to_string(1 + UniformIndex(rng, 50));
  }
  return inst;
}

}  // namespace

// ---------------------------------------------------------------------------
// Accessors
// ---------------------------------------------------------------------------

bool DimensionMeta::HasAttribute(const std::string& attribute) const {
  for (const auto& level : levels) {
    for (const auto& a : level.attributes) {
      if (a == attribute) return true;
    }
  }
  return false;
}

std::vector<std::string> DimensionMeta::AllAttributes() const {
  std::vector<std::string> out;
  for (const auto& level : levels) out.insert(out.end(), level.attributes.begin(), level.attributes.end());
  return out;
}

const DimensionMeta* WarehouseMeta::FindDimension(const std::string& dim_id) const {
  for (const auto& d : dimensions) {
    if (d.dim_id == dim_id) return &d;
  }
  return nullptr;
}

const FactSetMeta* WarehouseMeta::FindFactSet(const std::string& name) const {
  for (const auto& f : fact_sets) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const std::string& Instance::AttributeOrEmpty(const std::string& attribute) const {
  static const std::string kEmpty;
  auto it = attributes.find(attribute);
  return it == attributes.end() ? kEmpty : it->second;
}

size_t DimensionDoc::InstanceCount() const {
  size_t n = 0;
  for (const auto& level : levels) n += level.instances.size();
  return n;
}

std::vector<const Instance*> DimensionDoc::AllInstances() const {
  std::vector<const Instance*> out;
  out.reserve(InstanceCount());
  for (const auto& level : levels) {
    for (const auto& inst : level.instances) out.push_back(&inst);
  }
  return out;
}

const FactDoc* Warehouse::FindFacts(const std::string& fact_set) const {
  for (const auto& f : facts) {
    if (f.fact_set == fact_set) return &f;
  }
  return nullptr;
}

std::string FactsFileName(const std::string& fact_set) {
  return std::string(kFactsPrefix) + fact_set + ".xml";
}

std::string DimensionFileName(const std::string& dim_id) {
  return std::string(kDimensionPrefix) + dim_id + ".xml";
}

// ---------------------------------------------------------------------------
// XML mapping
// ---------------------------------------------------------------------------

XmlElement ModelToXml(const WarehouseMeta& meta) {
  XmlElement root("dw-model");
  for (const auto& fs : meta.fact_sets) {
    XmlElement& e = root.Append(XmlElement("factSet"));
    e.Attr("id", fs.name);
    for (const auto& m : fs.measures) e.Append(XmlElement("measure")).Attr("id", m);
    for (const auto& d : fs.dim_refs) e.Append(XmlElement("dimension")).Attr("idref", d);
  }
  for (const auto& dim : meta.dimensions) {
    XmlElement& e = root.Append(XmlElement("dimension"));
    e.Attr("id", dim.dim_id);
    for (const auto& level : dim.levels) {
      XmlElement& l = e.Append(XmlElement("Level"));
      l.Attr("id", level.level_id);
      for (const auto& a : level.attributes) l.Append(XmlElement("attribute")).Attr("id", a);
    }
  }
  return root;
}

WarehouseMeta ModelFromXml(const XmlElement& root) {
  ExpectName(root, "dw-model");
  WarehouseMeta meta;
  for (const auto& child : root.children) {
    if (child.name == "factSet") {
      FactSetMeta fs;
      fs.name = child.RequireAttribute("id");
      for (const auto& c : child.children) {
        if (c.name == "measure") {
          fs.measures.push_back(c.RequireAttribute("id"));
        } else if (c.name == "dimension") {
          fs.dim_refs.push_back(c.RequireAttribute("idref"));
        } else {
          throw Error(ErrorCode::kMalformedXml, "unexpected <" + c.name + "> in <factSet>", c.line);
        }
      }
      meta.fact_sets.push_back(std::move(fs));
    } else if (child.name == "dimension") {
      DimensionMeta dim;
      dim.dim_id = child.RequireAttribute("id");
      for (const auto& l : child.children) {
        ExpectName(l, "Level");
        LevelMeta level;
        level.level_id = l.RequireAttribute("id");
        for (const auto& a : l.children) {
          ExpectName(a, "attribute");
          level.attributes.push_back(a.RequireAttribute("id"));
        }
        dim.levels.push_back(std::move(level));
      }
      meta.dimensions.push_back(std::move(dim));
    } else {
      throw Error(ErrorCode::kMalformedXml, "unexpected <" + child.name + "> in <dw-model>", child.line);
    }
  }
  return meta;
}

XmlElement FactDocToXml(const FactDoc& facts) {
  XmlElement root("FactDoc");
  root.Attr("id", facts.fact_set);
  for (const auto& fact : facts.facts) {
    XmlElement& f = root.Append(XmlElement("Fact"));
    f.Attr("id", fact.fact_id);
    for (const auto& [name, value] : fact.measures) {
      f.Append(XmlElement("measure")).Attr("name", name).Attr("value", FormatMeasure(value));
    }
    for (const auto& [dim, ref] : fact.dim_refs) {
      f.Append(XmlElement("dimension")).Attr("dim-id", dim).Attr("value-id", ref);
    }
  }
  return root;
}

FactDoc FactDocFromXml(const XmlElement& root) {
  ExpectName(root, "FactDoc");
  FactDoc doc;
  doc.fact_set = root.RequireAttribute("id");
  doc.facts.reserve(root.children.size());
  for (const auto& f : root.children) {
    ExpectName(f, "Fact");
    Fact fact;
    fact.fact_id = f.RequireAttribute("id");
    for (const auto& c : f.children) {
      if (c.name == "measure") {
        const std::string& name = c.RequireAttribute("name");
        if (!fact.measures.emplace(name, ParseMeasure(c.RequireAttribute("value"), c.line)).second) {
          throw Error(ErrorCode::kMalformedXml, "duplicate measure '" + name + "'", c.line);
        }
      } else if (c.name == "dimension") {
        const std::string& dim = c.RequireAttribute("dim-id");
        if (!fact.dim_refs.emplace(dim, c.RequireAttribute("value-id")).second) {
          throw Error(ErrorCode::kMalformedXml, "duplicate reference to dimension '" + dim + "'", c.line);
        }
      } else {
        throw Error(ErrorCode::kMalformedXml, "unexpected <" + c.name + "> in <Fact>", c.line);
      }
    }
    doc.facts.push_back(std::move(fact));
  }
  return doc;
}

XmlElement DimensionToXml(const DimensionDoc& dimension) {
  XmlElement root("dimension");
  root.Attr("dim-id", dimension.dim_id);
  for (const auto& level : dimension.levels) {
    XmlElement& l = root.Append(XmlElement("Level"));
    l.Attr("id", level.level_id);
    for (const auto& inst : level.instances) {
      XmlElement& i = l.Append(XmlElement("instance"));
      i.Attr("id", inst.instance_id);
      if (inst.roll_up) i.Attr("Roll-up", *inst.roll_up);
      if (inst.drill_down) i.Attr("Drill-Down", *inst.drill_down);
      for (const auto& [name, value] : inst.attributes) {
        i.Append(XmlElement("attribute")).Attr("id", name).Attr("value", value);
      }
    }
  }
  return root;
}

DimensionDoc DimensionFromXml(const XmlElement& root) {
  ExpectName(root, "dimension");
  DimensionDoc doc;
  doc.dim_id = root.RequireAttribute("dim-id");
  for (const auto& l : root.children) {
    ExpectName(l, "Level");
    Level level;
    level.level_id = l.RequireAttribute("id");
    level.instances.reserve(l.children.size());
    for (const auto& i : l.children) {
      ExpectName(i, "instance");
      Instance inst;
      inst.instance_id = i.RequireAttribute("id");
      if (const std::string* r = i.FindAttribute("Roll-up")) inst.roll_up = *r;
      if (const std::string* d = i.FindAttribute("Drill-Down")) inst.drill_down = *d;
      for (const auto& a : i.children) {
        ExpectName(a, "attribute");
        const std::string& name = a.RequireAttribute("id");
        if (!inst.attributes.emplace(name, a.RequireAttribute("value")).second) {
          throw Error(ErrorCode::kMalformedXml, "duplicate attribute '" + name + "'", a.line);
        }
      }
      level.instances.push_back(std::move(inst));
    }
    doc.levels.push_back(std::move(level));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Directory I/O
// ---------------------------------------------------------------------------

namespace {

fs::path RequireDocument(const fs::path& dir, const std::string& name) {
  fs::path path = dir / name;
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kMissingDocument, "missing " + name + " in " + dir.string());
  }
  return path;
}

std::string DescribeViolations(const std::vector<Violation>& violations) {
  std::string out = std::to_string(violations.size()) + " violation(s):";
  size_t shown = 0;
  for (const auto& v : violations) {
    if (++shown > 20) {
      out += " ...";
      break;
    }
    out += " [" + v.location + ": " + v.message + "]";
  }
  return out;
}

}  // namespace

Warehouse ParseWarehouse(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kMissingDocument, "no such directory " + dir.string());
  Warehouse w;
  w.meta = ModelFromXml(ParseXmlFile(RequireDocument(dir, kModelFileName)));
  for (const auto& fs_meta : w.meta.fact_sets) {
    w.facts.push_back(FactDocFromXml(ParseXmlFile(RequireDocument(dir, FactsFileName(fs_meta.name)))));
    if (w.facts.back().fact_set != fs_meta.name) {
      throw Error(ErrorCode::kIntegrityViolation, FactsFileName(fs_meta.name) + " declares fact set '" +
                                                      w.facts.back().fact_set + "'");
    }
  }
  for (const auto& dim_meta : w.meta.dimensions) {
    DimensionDoc doc = DimensionFromXml(ParseXmlFile(RequireDocument(dir, DimensionFileName(dim_meta.dim_id))));
    if (doc.dim_id != dim_meta.dim_id) {
      throw Error(ErrorCode::kIntegrityViolation,
                  DimensionFileName(dim_meta.dim_id) + " declares dimension '" + doc.dim_id + "'");
    }
    w.dimensions.emplace(dim_meta.dim_id, std::move(doc));
  }
  if (w.meta.fact_sets.empty()) {
    throw Error(ErrorCode::kMissingDocument, "dw-model.xml in " + dir.string() + " declares no fact set");
  }
  if (auto violations = ValidateWarehouse(w); !violations.empty()) {
    throw Error(ErrorCode::kIntegrityViolation, DescribeViolations(violations));
  }
  return w;
}

Warehouse LoadWarehousePartial(const fs::path& dir, const std::string& fact_set,
                               const std::vector<std::string>& dim_ids) {
  Warehouse w;
  w.meta = ModelFromXml(ParseXmlFile(RequireDocument(dir, kModelFileName)));
  w.facts.push_back(FactDocFromXml(ParseXmlFile(RequireDocument(dir, FactsFileName(fact_set)))));
  for (const auto& dim : dim_ids) {
    w.dimensions.emplace(dim, DimensionFromXml(ParseXmlFile(RequireDocument(dir, DimensionFileName(dim)))));
  }
  return w;
}

void SerializeWarehouse(const Warehouse& warehouse, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  WriteXmlFile(ModelToXml(warehouse.meta), dir / kModelFileName);
  for (const auto& facts : warehouse.facts) {
    WriteXmlFile(FactDocToXml(facts), dir / FactsFileName(facts.fact_set));
  }
  for (const auto& [dim_id, doc] : warehouse.dimensions) {
    WriteXmlFile(DimensionToXml(doc), dir / DimensionFileName(dim_id));
  }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::vector<Violation> ValidateReferentialIntegrity(const Warehouse& warehouse) {
  std::vector<Violation> out;

  // instance id -> level index, per dimension
  std::unordered_map<std::string, std::unordered_map<std::string, size_t>> index;
  for (const auto& [dim_id, doc] : warehouse.dimensions) {
    auto& ids = index[dim_id];
    for (size_t l = 0; l < doc.levels.size(); ++l) {
      for (const auto& inst : doc.levels[l].instances) ids.emplace(inst.instance_id, l);
    }
  }

  for (const auto& facts : warehouse.facts) {
    const std::string file = FactsFileName(facts.fact_set);
    for (const auto& fact : facts.facts) {
      for (const auto& [dim, ref] : fact.dim_refs) {
        auto dim_it = index.find(dim);
        if (dim_it == index.end()) {
          out.push_back({file + "/Fact[" + fact.fact_id + "]", "references unknown dimension '" + dim + "'"});
        } else if (!dim_it->second.contains(ref)) {
          out.push_back({file + "/Fact[" + fact.fact_id + "]",
                         "dimension '" + dim + "' has no instance '" + ref + "'"});
        }
      }
    }
  }

  for (const auto& [dim_id, doc] : warehouse.dimensions) {
    const auto& ids = index[dim_id];
    const std::string file = DimensionFileName(dim_id);
    for (size_t l = 0; l < doc.levels.size(); ++l) {
      for (const auto& inst : doc.levels[l].instances) {
        auto check = [&](const std::optional<std::string>& link, const char* kind, size_t expected_level) {
          if (!link) return;
          auto it = ids.find(*link);
          if (it == ids.end()) {
            out.push_back({file + "/instance[" + inst.instance_id + "]",
                           std::string(kind) + " references unknown instance '" + *link + "'"});
          } else if (it->second != expected_level) {
            out.push_back({file + "/instance[" + inst.instance_id + "]",
                           std::string(kind) + " target '" + *link + "' is not in an adjacent level"});
          }
        };
        // Levels are listed finest first: Roll-up points one level up.
        check(inst.roll_up, "Roll-up", l + 1);
        check(inst.drill_down, "Drill-Down", l == 0 ? SIZE_MAX : l - 1);
      }
    }
  }
  return out;
}

std::vector<Violation> ValidateWarehouse(const Warehouse& warehouse) {
  std::vector<Violation> out;
  const WarehouseMeta& meta = warehouse.meta;

  std::set<std::string> dim_ids;
  for (const auto& dim : meta.dimensions) {
    if (!dim_ids.insert(dim.dim_id).second) {
      out.push_back({kModelFileName, "duplicate dimension id '" + dim.dim_id + "'"});
    }
    std::set<std::string> attrs;
    for (const auto& a : dim.AllAttributes()) {
      if (!attrs.insert(a).second) {
        out.push_back({kModelFileName, "dimension '" + dim.dim_id + "' declares attribute '" + a + "' twice"});
      }
    }
  }
  for (const auto& fs_meta : meta.fact_sets) {
    for (const auto& ref : fs_meta.dim_refs) {
      if (!dim_ids.contains(ref)) {
        out.push_back({kModelFileName, "fact set '" + fs_meta.name + "' references unknown dimension '" + ref + "'"});
      }
    }
  }

  for (const auto& [dim_id, doc] : warehouse.dimensions) {
    const DimensionMeta* dm = meta.FindDimension(dim_id);
    const std::string file = DimensionFileName(dim_id);
    if (dm == nullptr) {
      out.push_back({file, "dimension '" + dim_id + "' is not declared in dw-model.xml"});
      continue;
    }
    std::unordered_set<std::string> seen;
    for (const auto* inst : doc.AllInstances()) {
      if (!seen.insert(inst->instance_id).second) {
        out.push_back({file, "duplicate instance id '" + inst->instance_id + "'"});
      }
      for (const auto& [name, value] : inst->attributes) {
        if (!dm->HasAttribute(name)) {
          out.push_back({file + "/instance[" + inst->instance_id + "]", "undeclared attribute '" + name + "'"});
        }
      }
    }
  }

  for (const auto& facts : warehouse.facts) {
    const FactSetMeta* fm = meta.FindFactSet(facts.fact_set);
    const std::string file = FactsFileName(facts.fact_set);
    if (fm == nullptr) {
      out.push_back({file, "fact set '" + facts.fact_set + "' is not declared in dw-model.xml"});
      continue;
    }
    std::unordered_set<std::string> seen;
    for (const auto& fact : facts.facts) {
      if (!seen.insert(fact.fact_id).second) out.push_back({file, "duplicate fact id '" + fact.fact_id + "'"});
      for (const auto& [dim, ref] : fact.dim_refs) {
        if (std::find(fm->dim_refs.begin(), fm->dim_refs.end(), dim) == fm->dim_refs.end()) {
          out.push_back({file + "/Fact[" + fact.fact_id + "]",
                         "dimension '" + dim + "' is not a declared reference of '" + facts.fact_set + "'"});
        }
      }
      for (const auto& [name, value] : fact.measures) {
        if (std::find(fm->measures.begin(), fm->measures.end(), name) == fm->measures.end()) {
          out.push_back({file + "/Fact[" + fact.fact_id + "]", "undeclared measure '" + name + "'"});
        }
      }
    }
  }

  auto refs = ValidateReferentialIntegrity(warehouse);
  out.insert(out.end(), refs.begin(), refs.end());
  return out;
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

Warehouse GenerateWarehouse(const GenSpec& spec) {
  if (spec.dim_sizes.empty()) throw Error(ErrorCode::kInvalidSpec, "no dimensions requested");
  for (const auto& [dim, size] : spec.dim_sizes) {
    bool known = false;
    for (const auto& t : Templates()) known = known || t.dim_id == dim;
    if (!known) throw Error(ErrorCode::kInvalidSpec, "unknown dimension '" + dim + "'");
    if (size == 0) throw Error(ErrorCode::kInvalidSpec, "dimension '" + dim + "' has size 0");
  }

  Warehouse w;
  FactSetMeta sales{"sales", {"amount", "quantity"}, {}};
  for (const auto& t : Templates()) {
    auto size_it = spec.dim_sizes.find(std::string(t.dim_id));
    if (size_it == spec.dim_sizes.end()) continue;
    sales.dim_refs.emplace_back(t.dim_id);
    w.meta.dimensions.push_back({std::string(t.dim_id), {{std::string(t.level_id), t.attributes}}});

    std::mt19937_64 rng(SplitMix(spec.seed ^ HashName(t.dim_id)));
    DimensionDoc doc{std::string(t.dim_id), {{std::string(t.level_id), {}}}};
    doc.levels[0].instances.reserve(size_it->second);
    for (uint64_t i = 0; i < size_it->second; ++i) doc.levels[0].instances.push_back(MakeInstance(t, i, rng));
    w.dimensions.emplace(t.dim_id, std::move(doc));
  }
  w.meta.fact_sets.push_back(sales);

  std::mt19937_64 rng(SplitMix(spec.fact_seed.value_or(spec.seed) ^ HashName("facts")));
  FactDoc facts{"sales", {}};
  facts.facts.reserve(spec.n_facts);
  for (uint64_t i = 0; i < spec.n_facts; ++i) {
    Fact fact;
    fact.fact_id = "f" + std::to_string(i + 1);
    for (const auto& m : sales.measures) {
      // Uniform cents in [1.00, 1000.00].
      fact.measures[m] = static_cast<double>(100 + UniformIndex(rng, 99901)) / 100.0;
    }
    for (const auto& dim : sales.dim_refs) {
      const auto& instances = w.dimensions.at(dim).levels[0].instances;
      fact.dim_refs[dim] = instances[UniformIndex(rng, instances.size())].instance_id;
    }
    facts.facts.push_back(std::move(fact));
  }
  w.facts.push_back(std::move(facts));
  return w;
}

}  // namespace xwfrag
