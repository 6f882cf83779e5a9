#include "cli.h"

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.h"
#include "xwfrag/fact_frag.h"
#include "xwfrag/xml.h"

namespace xwfrag {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "xwfrag");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"fragment", "--method", "xy", "--warehouse", "w", "--workload", "q", "--out", "o"}).code, kExitUsage);
  EXPECT_EQ(Cli({"generate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"generate", "--preset", "config9", "--out", "x"}).code, kExitUsage);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST(CliTest, GenerateFragmentBench) {
  TempDir dir;
  const std::string wh = (dir.path() / "wh").string();
  const std::string wl = (dir.path() / "wh" / "workload.xq").string();

  const CliRun gen = Cli({"generate", "--preset", "config1", "--seed", "3", "--out", wh});
  ASSERT_EQ(gen.code, kExitOk) << gen.err;
  EXPECT_NE(gen.out.find("800 facts, 13 queries, 20 predicates"), std::string::npos) << gen.out;

  for (const char* method : {"pc", "ab"}) {
    const std::string frags = (dir.path() / method).string();
    const std::string dump = (dir.path() / "dump").string();
    const CliRun frag = Cli({"fragment", "--method", method, "--warehouse", wh, "--workload", wl, "--out", frags,
                          "--dump-matrices", dump});
    ASSERT_EQ(frag.code, kExitOk) << frag.err;
    EXPECT_TRUE(fs::exists(fs::path(frags) / kSchemaFileName));
    EXPECT_TRUE(fs::exists(fs::path(frags) / "f1" / kModelFileName));

    const CliRun bench = Cli({"bench", "--mono", wh, "--frags", frags, "--workload", wl, "--repeats", "1"});
    ASSERT_EQ(bench.code, kExitOk) << bench.err;
    EXPECT_TRUE(bench.out.starts_with("query_id,t_mono_ns"));
    EXPECT_EQ(std::count(bench.out.begin(), bench.out.end(), '\n'), 14);
  }
  EXPECT_TRUE(fs::exists(dir.path() / "dump" / "pum_Customer.csv"));
}

TEST(CliTest, DataErrors) {
  TempDir dir;
  SerializeWarehouse(testing::SmallWarehouse(), dir.path() / "wh");
  const fs::path wl = dir.path() / "empty.xq";
  WriteFile(wl,
            "for $x in //FactDoc/Fact, $y in //dimension[@dim-id='Customer']/Level/instance\n"
            "where $x/dimension[@dim-id='Customer']/@value-id=$y/@id return $x\n");
  const CliRun none = Cli({"fragment", "--method", "pc", "--warehouse", (dir.path() / "wh").string(), "--workload",
                        wl.string(), "--out", (dir.path() / "out").string()});
  EXPECT_EQ(none.code, kExitData);
  EXPECT_NE(none.err.find("no candidate dimensions"), std::string::npos) << none.err;

  const CliRun missing = Cli({"fragment", "--warehouse", (dir.path() / "nowhere").string(), "--workload", wl.string(),
                           "--out", (dir.path() / "out").string()});
  EXPECT_EQ(missing.code, kExitData);

  WriteFile(wl, "for $x in");
  const CliRun syntax = Cli({"fragment", "--warehouse", (dir.path() / "wh").string(), "--workload", wl.string(),
                          "--out", (dir.path() / "out").string()});
  EXPECT_EQ(syntax.code, kExitData);
  EXPECT_NE(syntax.err.find("SyntaxError"), std::string::npos) << syntax.err;
}

}  // namespace
}  // namespace xwfrag
