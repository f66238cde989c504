#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "lielat/chevalley.hpp"
#include "lielat/parahoric.hpp"

using namespace lielat;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json machine(std::vector<std::string> args) {
  args.push_back("--machine");
  const Outcome o = invoke(args);
  EXPECT_EQ(o.code, 0) << o.err;
  return json::parse(o.out);
}

}  // namespace

TEST(CliExitCodes, UsageErrors) {
  EXPECT_EQ(invoke({"info", "Z9"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"info", "E9"}).code, cli::kUsage);
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"parahoric", "E8", "--node", "1", "--prime", "4"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"parahoric", "E8", "--node", "9", "--prime", "2"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"parahoric", "E8", "--node", "a4 (mark 3)", "--prime", "2"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"parahoric", "G2", "--node", "1", "--prime", "3", "--divisors"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"match", "E8", "--prime", "2", "--disc", "2^x"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"algebra", "A2", "--verify", "sometimes"}).code, cli::kUsage);
  const Outcome o = invoke({"info", "Z9"});
  EXPECT_TRUE(o.out.empty());
  EXPECT_FALSE(o.err.empty());
}

TEST(CliExitCodes, Success) {
  EXPECT_EQ(invoke({"info", "E8"}).code, cli::kOk);
  EXPECT_EQ(invoke({"roots", "G2", "--all"}).code, cli::kOk);
  EXPECT_EQ(invoke({"algebra", "F4", "--verify", "full"}).code, cli::kOk);
  EXPECT_EQ(invoke({"gram", "B3", "--normalized", "--divisors"}).code, cli::kOk);
  EXPECT_EQ(invoke({"--version"}).code, cli::kOk);
}

TEST(CliInfo, KnownNumbers) {
  const json e8 = machine({"info", "E8"});
  EXPECT_EQ(e8["schema_version"], cli::kSchemaVersion);
  EXPECT_EQ(e8["command"], "info");
  EXPECT_EQ(e8["result"]["h_dual"], 30);
  EXPECT_EQ(e8["result"]["det_g"]["text"], "1");
  EXPECT_EQ(e8["result"]["det_torus"]["text"], "1");
  const json g2 = machine({"info", "G2"});
  EXPECT_EQ(g2["result"]["det_g"]["text"], "3^7");
  EXPECT_EQ(g2["result"]["det_torus"]["text"], "3");
}

TEST(CliParahoric, E8SweepAndAffine) {
  const json doc = machine({"parahoric", "E8", "--node", "all", "--prime", "2"});
  const auto& reps = doc["result"]["reports"];
  ASSERT_EQ(reps.size(), 9u);
  const std::vector<std::size_t> want = {0, 112, 162, 188, 200, 202, 168, 182, 128};
  std::vector<std::size_t> got;
  for (const auto& r : reps) got.push_back(r["dim_radical"].get<std::size_t>());
  // Node order is library numbering; the multiset is what the sweep fixes.
  std::sort(got.begin(), got.end());
  auto w = want;
  std::sort(w.begin(), w.end());
  EXPECT_EQ(got, w);
  EXPECT_TRUE(reps[0]["hyperspecial"].get<bool>());
  EXPECT_EQ(reps[0]["dim_radical"], 0);

  const json f4 = machine({"parahoric", "F4", "--node", "2", "--prime", "3"});
  EXPECT_EQ(f4["result"]["reports"][0]["discriminant"]["text"], "2^26*3^36");
}

TEST(CliParahoric, SelectorFormsAgree) {
  const std::string a = invoke({"parahoric", "E8", "--node", "4", "--prime", "2", "--machine"}).out;
  for (const char* sel : {"a4", "alpha4", "A4", "a4 (mark 5)", "mark5"}) {
    json x = machine({"parahoric", "E8", "--node", sel, "--prime", "2"});
    json y = json::parse(a);
    EXPECT_EQ(x["result"], y["result"]) << sel;
  }
}

TEST(CliNodeSelector, Parsing) {
  const RootSystem e8(LieType::parse("E8"));
  EXPECT_EQ(cli::parse_node_selector(e8, "all").size(), 9u);
  EXPECT_EQ(cli::parse_node_selector(e8, "affine"), std::vector<int>{0});
  EXPECT_EQ(cli::parse_node_selector(e8, "a0"), std::vector<int>{0});
  EXPECT_EQ(cli::parse_node_selector(e8, "mark2"), (std::vector<int>{1, 7}));
  EXPECT_EQ(cli::parse_node_selector(e8, "mark1"), std::vector<int>{0});
  EXPECT_EQ(cli::parse_node_selector(e8, " a4 ( mark 5 ) "), std::vector<int>{4});
  for (const char* bad : {"9", "a9", "mark7", "a4 (mark 4)", "x", "", "-1", "a"})
    EXPECT_THROW(cli::parse_node_selector(e8, bad), cli::UsageError) << bad;
  // Every printed node description parses back to its node.
  for (int k = 0; k <= 8; ++k)
    EXPECT_EQ(cli::parse_node_selector(e8, node_description(e8, k)), std::vector<int>{k}) << node_description(e8, k);
}

TEST(CliMatch, KnownIdentifications) {
  const json e8 = machine({"match", "E8", "--prime", "2", "--disc", "2^200"});
  ASSERT_EQ(e8["result"]["matches"].size(), 1u);
  EXPECT_EQ(e8["result"]["matches"][0]["node"], 4);
  EXPECT_EQ(e8["result"]["matches"][0]["mark"], 5);
  EXPECT_TRUE(machine({"match", "E8", "--prime", "2", "--disc", "2^248"})["result"]["matches"].empty());
  const json g2 = machine({"match", "G2", "--prime", "2", "--disc", "3^7*2^6"});
  ASSERT_EQ(g2["result"]["matches"].size(), 1u);
  EXPECT_EQ(g2["result"]["matches"][0]["node"], 2);
}

// Property: machine output is byte-identical across runs.
TEST(CliMachine, Deterministic) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{"info", "F4", "--machine"},
                                             {"parahoric", "E7", "--node", "all", "--prime", "3", "--machine"},
                                             {"gram", "G2", "--divisors", "--machine"},
                                             {"match", "E6", "--prime", "2", "--disc", "3", "--machine"}}) {
    const Outcome a = invoke(args), b = invoke(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const json doc = json::parse(a.out);
    EXPECT_EQ(doc["schema_version"], cli::kSchemaVersion);
    // Keys are emitted in sorted order.
    EXPECT_EQ(doc.dump(2) + "\n", a.out);
  }
}

// Property: reports and factored integers survive JSON round-trips.
TEST(CliMachine, ReportsRoundTrip) {
  for (const char* t : {"G2", "F4", "E6", "D5"}) {
    const ChevalleyAlgebra alg{RootSystem(LieType::parse(t))};
    const ParahoricCalculator calc(alg);
    for (int node = 0; node <= alg.root_system().rank(); ++node)
      for (std::uint64_t p : {2, 3}) {
        const ParahoricReport r = make_report(calc, node, p);
        const json j = cli::to_json(r);
        const ParahoricReport back = cli::report_from_json(j);
        EXPECT_EQ(cli::to_json(back), j);
        EXPECT_EQ(back.discriminant, r.discriminant);
        EXPECT_EQ(back.layers.size(), r.layers.size());
      }
  }
  for (const char* s : {"1", "-1", "2^26*3^36", "-2^3*7"}) {
    const FactoredInteger f = FactoredInteger::parse(s);
    EXPECT_EQ(cli::factored_from_json(cli::to_json(f)), f) << s;
  }
  FactoredInteger neg = FactoredInteger::parse("3");
  neg.multiply_prime_power(2, -4);
  EXPECT_EQ(cli::factored_from_json(cli::to_json(neg)), neg);
}

TEST(CliAlgebra, CacheRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / ("lielat_cli_cache_" + std::to_string(::getpid()) + ".json");
  std::filesystem::remove(path);
  const Outcome first = invoke({"algebra", "F4", "--cache", path.string(), "--verify", "full"});
  EXPECT_EQ(first.code, 0) << first.err;
  ASSERT_TRUE(std::filesystem::exists(path));
  const Outcome second = invoke({"algebra", "F4", "--cache", path.string(), "--verify", "full"});
  EXPECT_EQ(second.code, 0) << second.err;
  // A cache for a different type is refused.
  const Outcome wrong = invoke({"algebra", "E6", "--cache", path.string()});
  EXPECT_NE(wrong.code, 0);
  std::filesystem::remove(path);
}

TEST(CliReferenceChecks, FastTierPasses) {
  const Outcome o = invoke({"verify-paper"});
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("informational: paper-table mismatch candidate"), std::string::npos);
  EXPECT_NE(o.out.find(" 0 failed"), std::string::npos);
}
