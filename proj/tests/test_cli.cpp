#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "ncst/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ncst::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Outcome& o) { return nlohmann::json::parse(o.out); }

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Cli, DistanceAtZeroKappaIsTheInterval) {
  const Outcome o = run({"distance", "--p", "0,3,0,0", "--q", "0,0,0,0", "--kappa-sq", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json_of(o);
  EXPECT_EQ(j["command"], "distance");
  EXPECT_EQ(j["result"]["functional"], "D");
  EXPECT_EQ(j["result"]["total"].get<double>(), 9.0);
  EXPECT_EQ(j["result"]["quantum"].get<double>(), 0.0);
}

TEST(Cli, DistanceWithStateAlphaUsesFiniteForm) {
  const Outcome o = run({"distance", "--p", "0.5,0.2,0,0", "--width", "5", "--state-alpha", "1000", "--diagnostics"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json_of(o);
  EXPECT_EQ(j["result"]["functional"], "D_alpha");
  EXPECT_TRUE(j["result"].contains("omega_second_moment"));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"distance", "--p", "1,2,3"}).code, 2);
  EXPECT_EQ(run({"distance", "--width", "-1"}).code, 2);
  EXPECT_EQ(run({"distance", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"distance", "--kappa-sq", "1", "--planck-length", "1"}).code, 2);
  EXPECT_EQ(run({"distance", "--config", "/nonexistent/config.json"}).code, 2);
  EXPECT_EQ(run({"causal", "--via-weyl", "--pairing", "odd"}).code, 2);
  EXPECT_EQ(run({"verify", "nosuchsuite"}).code, 2);
  EXPECT_EQ(run({"distance", "--state-alpha", "0"}).code, 2);
  EXPECT_EQ(run({"distance", "--u", "0,1,0,0"}).code, 2);
  const Outcome bad = run({"distance", "--config", temp_file("ncst_bad.json", "{not json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("error"), std::string::npos);
}

TEST(Cli, CausalClassifications) {
  auto classify = [](const std::string& p) {
    const Outcome o = run({"causal", "--p", p, "--width", "1e4"});
    EXPECT_EQ(o.code, 0) << o.err;
    return json_of(o)["result"]["classification"].get<std::string>();
  };
  EXPECT_EQ(classify("1,0,0,0"), "future");
  EXPECT_EQ(classify("-1,0.2,0,0"), "past");
  EXPECT_EQ(classify("0.2,1,0,0"), "spacelike");
  const Outcome fuzzy = run({"causal", "--p", "1.05,1,0,0", "--width", "1e2"});
  EXPECT_EQ(json_of(fuzzy)["result"]["classification"], "fuzzy");
}

TEST(Cli, CausalViaWeylAgreesWithReduced) {
  const auto a = json_of(run({"causal", "--p", "1.05,1,0,0"}));
  const auto b = json_of(run({"causal", "--p", "1.05,1,0,0", "--via-weyl"}));
  const auto c = json_of(run({"causal", "--p", "1.05,1,0,0", "--via-weyl", "--pairing", "krein"}));
  EXPECT_EQ(b["result"]["route"], "weyl-standard");
  EXPECT_NEAR(a["result"]["value"].get<double>(), b["result"]["value"].get<double>(), 1e-10);
  EXPECT_NEAR(c["result"]["value"].get<double>(), 0.5 * a["result"]["value"].get<double>(), 1e-10);
}

TEST(Cli, VerifyExitCodes) {
  const Outcome ok = run({"verify", "weyl"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_TRUE(json_of(ok)["passed"].get<bool>());
  // the stated small-support constant is not what the integral gives
  const Outcome bad = run({"verify", "minvar", "--format", "text"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("fail"), std::string::npos);
}

TEST(Cli, CsvAndJsonCarryTheSameValues) {
  const std::vector<std::string> base{"sweep", "separation", "--range", "0.5:2:4", "--direction", "0,1,0,0"};
  auto with = [&](const std::string& fmt) {
    auto a = base;
    a.insert(a.end(), {"--format", fmt});
    return run(a);
  };
  const Outcome js = with("json"), csv = with("csv");
  ASSERT_EQ(js.code, 0) << js.err;
  ASSERT_EQ(csv.code, 0) << csv.err;
  const auto rows = json_of(js)["rows"];
  ASSERT_EQ(rows.size(), 4u);
  std::istringstream in(csv.out);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("x,interval,classical", 0), 0u);
  for (const auto& r : rows) {
    std::getline(in, line);
    std::ostringstream expect;
    expect << r["x"].dump() << "," << r["interval"].dump() << "," << r["classical"].dump();
    EXPECT_EQ(line.rfind(expect.str(), 0), 0u) << line;
  }
  const Outcome text = with("text");
  EXPECT_NE(text.out.find("axis: separation"), std::string::npos);
}

TEST(Cli, ConfigPrecedenceAndEcho) {
  const std::string path = temp_file(
      "ncst_cfg.json", R"({"constants": {"planck_length": 0.5}, "state": {"alpha": 3.0}, "quadrature": {"seed": 9}})");
  const auto j = json_of(run({"distance", "--config", path, "--seed", "11"}));
  EXPECT_EQ(j["config"]["constants"]["planck_length"].get<double>(), 0.5);
  EXPECT_EQ(j["config"]["state"]["alpha"].get<double>(), 3.0);
  EXPECT_EQ(j["config"]["quadrature"]["seed"].get<std::uint64_t>(), 11u);
  const std::string flat = temp_file("ncst_flat.json", R"({"state_alpha": 2.5, "psi_width": 4.0})");
  const auto k = json_of(run({"distance", "--config", flat}));
  EXPECT_EQ(k["config"]["state"]["alpha"].get<double>(), 2.5);
  EXPECT_EQ(k["config"]["state"]["psi"]["width"].get<double>(), 4.0);
}

TEST(Cli, DemoConfigLoads) {
  const Outcome o = run({"distance", "--config", std::string(NCST_DEMO_DIR) + "/config.json"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json_of(o)["config"]["quadrature"]["seed"].get<std::uint64_t>(), 7u);
}

TEST(Cli, SweepsAreOrderedAndDeterministic) {
  const std::vector<std::string> args{"sweep", "width", "--range", "10:1000:3", "--log", "--p", "1,0.2,0,0"};
  const Outcome a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto b_args = args;
  b_args.insert(b_args.end(), {"--workers", "1"});
  const Outcome b = run(b_args);
  const auto ra = json_of(a)["rows"], rb = json_of(b)["rows"];
  ASSERT_EQ(ra.size(), 3u);
  EXPECT_NEAR(ra[0]["width"].get<double>(), 10.0, 1e-12);
  EXPECT_NEAR(ra[1]["width"].get<double>(), 100.0, 1e-12);
  EXPECT_NEAR(ra[2]["width"].get<double>(), 1000.0, 1e-9);
  EXPECT_EQ(ra, rb);
  EXPECT_TRUE(ra[0].contains("causal_limit"));

  const Outcome alpha = run({"sweep", "state-alpha", "--range", "1:100:3", "--log", "--p", "0.5,0.3,0,0", "--width", "5"});
  ASSERT_EQ(alpha.code, 0) << alpha.err;
  const auto rows = json_of(alpha)["rows"];
  EXPECT_LT(std::abs(rows[2]["gap"].get<double>()), std::abs(rows[0]["gap"].get<double>()));
}

TEST(Cli, BadRangesAreUsageErrors) {
  EXPECT_EQ(run({"sweep", "separation", "--range", "1:2"}).code, 2);
  EXPECT_EQ(run({"sweep", "separation", "--range", "1:2:0"}).code, 2);
  EXPECT_EQ(run({"sweep", "width", "--range", "-1:2:3", "--log"}).code, 2);
  EXPECT_EQ(run({"sweep", "width", "--range", "0:2:3"}).code, 2);
  EXPECT_EQ(run({"sweep", "diagonal", "--range", "1:2:3"}).code, 2);
}

TEST(Cli, ExhaustedBudgetExitsThree) {
  const Outcome o = run({"distance", "--p", "1,0.9,0,0", "--width", "3", "--max-evals", "20", "--rel-tol", "1e-14"});
  EXPECT_EQ(o.code, 3);
  EXPECT_FALSE(json_of(o)["result"]["converged"].get<bool>());
}

TEST(Cli, HelpExitsZero) {
  const Outcome o = run({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("distance"), std::string::npos);
}

TEST(Cli, JsonMatchesDocumentedSchema) {
  auto has_keys = [](const nlohmann::json& j, std::initializer_list<const char*> keys) {
    for (const char* k : keys) EXPECT_TRUE(j.contains(k)) << k;
  };
  const auto d = json_of(run({"distance", "--p", "1,0,0,0", "--width", "1e4", "--kappa-sq", "0"}));
  has_keys(d, {"command", "config", "result"});
  has_keys(d["config"], {"constants", "state", "quadrature", "output"});
  has_keys(d["config"]["quadrature"], {"rel_tol", "abs_tol", "max_evals", "mc_samples", "seed", "workers"});
  has_keys(d["result"], {"p", "q", "width_p", "width_q", "functional", "classical", "quantum", "total", "error",
                         "converged"});
  EXPECT_EQ(d["result"]["classical"].get<double>(), -1.0);

  const auto c = json_of(run({"causal"}));
  has_keys(c["result"], {"route", "value", "error", "classification", "converged"});

  const auto v = json_of(run({"verify", "weyl"}));
  has_keys(v, {"suite", "passed", "seconds", "rows"});
  for (const auto& r : v["rows"]) has_keys(r, {"name", "expected", "computed", "tolerance", "verdict"});
}
