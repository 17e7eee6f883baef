#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "bohr_cli/cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "bohr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = bohr::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(BOHR_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("bohr_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliCheckEquiv, ExitCodesAndVerdicts) {
  const CliRun no = run({"check-equiv", data("f1.json"), data("f2.json")});
  EXPECT_EQ(no.code, 1);
  const auto v = nlohmann::json::parse(no.out);
  EXPECT_EQ(v["status"], "NotEquivalent");
  EXPECT_EQ(v["obstruction"]["kind"], "ModulusMismatch");

  const CliRun yes = run({"check-equiv", data("f1.json"), data("f1.json")});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(nlohmann::json::parse(yes.out)["witness"], nlohmann::json::array({0.0, 0.0, 0.0}));

  const CliRun phase = run({"check-equiv", data("log2_log4_a.json"), data("log2_log4_b.json")});
  EXPECT_EQ(phase.code, 1);
  EXPECT_EQ(nlohmann::json::parse(phase.out)["obstruction"]["kernel_vector"], nlohmann::json::array({2, -1}));
}

TEST(CliCheckEquiv, ToleranceFlagsAreHonoured) {
  // |a| = 1 vs |b| = 2 is a mismatch at any sane relative tolerance, but not at 2.
  EXPECT_EQ(run({"check-equiv", data("f1.json"), data("f2.json"), "--tol-modulus", "2"}).code, 0);
}

TEST(CliCheckEquiv, MalformedInputIsAUsageError) {
  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << "{\"basis\": ";
  const CliRun r = run({"check-equiv", bad, data("f1.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse_error"), std::string::npos);
  EXPECT_EQ(run({"check-equiv", temp_path("missing.json"), data("f1.json")}).code, 2);
  EXPECT_EQ(run({"check-equiv", data("f1.json")}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"check-equiv", data("f1.json"), data("strip_0_1.json")}).code, 2);
}

TEST(CliImage, WritesCsvAndSummary) {
  const std::string out = temp_path("f1.csv");
  const CliRun r = run({"image", data("f1.json"), "--sigma", "0", "--grid", "16", "--out", out});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("points: 4096"), std::string::npos);
  EXPECT_NE(r.out.find("max modulus: 4.000000"), std::string::npos);
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.rfind("sigma,t,re,im\n0,nan,4,0\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4097);

  // Deterministic output, byte for byte.
  const std::string again = temp_path("f1_again.csv");
  run({"image", data("f1.json"), "--sigma", "0", "--grid", "16", "--out", again});
  EXPECT_EQ(slurp(again), csv);
}

TEST(CliImage, GridOfOneIsTheValueAtZero) {
  const CliRun r = run({"image", data("f1.json"), "--sigma", "0", "--grid", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "sigma,t,re,im\n0,nan,4,0\n");
  EXPECT_NE(r.err.find("points: 1"), std::string::npos);
}

TEST(CliImage, FormatsAndSamplers) {
  const CliRun svg = run({"image", data("f1.json"), "--sigma", "0", "--grid", "4", "--format", "svg"});
  EXPECT_EQ(svg.code, 0);
  EXPECT_EQ(svg.out.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.out.find("</svg>"), std::string::npos);

  const CliRun json = run({"image", data("f1.json"), "--sigma", "0", "--samples", "50", "--seed", "4",
                        "--format", "json"});
  EXPECT_EQ(json.code, 0);
  EXPECT_EQ(nlohmann::json::parse(json.out)["points"].size(), 50u);

  EXPECT_EQ(run({"image", data("f1.json"), "--sigma", "0", "--grid", "4", "--samples", "4"}).code, 2);
  EXPECT_EQ(run({"image", data("f1.json"), "--sigma", "0", "--format", "png"}).code, 2);
  EXPECT_EQ(run({"image", data("f1.json"), "--sigma", "0", "--grid", "300"}).code, 2);
}

TEST(CliImage, StripIsEnforcedUnlessOverridden) {
  EXPECT_EQ(run({"image", data("strip_0_1.json"), "--sigma", "2", "--grid", "4"}).code, 2);
  EXPECT_EQ(run({"image", data("strip_0_1.json"), "--sigma", "2", "--grid", "4", "--override-strip"}).code, 0);
}

TEST(CliUnionImage, RangeSyntax) {
  const CliRun r = run({"union-image", data("f1.json"), "--sigma-range", "-6:0:25", "--grid", "8",
                     "--out", temp_path("union.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("points: 12800"), std::string::npos);

  const CliRun dflt = run({"union-image", data("f1.json"), "--sigma-range", "-1:0", "--grid", "2",
                        "--out", temp_path("union_default.csv")});
  EXPECT_NE(dflt.out.find("points: 200"), std::string::npos);

  EXPECT_EQ(run({"union-image", data("f1.json"), "--sigma-range", "0:-1:3"}).code, 2);
  EXPECT_EQ(run({"union-image", data("f1.json"), "--sigma-range", "a:b"}).code, 2);
  EXPECT_EQ(run({"union-image", data("strip_0_1.json"), "--sigma-range", "0:1:3", "--compact"}).code, 2);
  EXPECT_EQ(run({"union-image", data("strip_0_1.json"), "--sigma-range", "0:1:3", "--grid", "2",
                 "--out", temp_path("u.csv")}).code, 0);
}

TEST(CliBfApprox, HalvesCoefficientsAtDegreeTwo) {
  const CliRun r = run({"bf-approx", data("f1.json"), "--degrees", "2,2,2"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["terms"].size(), 3u);
  EXPECT_EQ(doc["terms"][0]["re"], 0.5);
  EXPECT_EQ(doc["terms"][2]["re"], 1.0);
  EXPECT_EQ(run({"bf-approx", data("f1.json"), "--degrees", "2,2"}).code, 2);
  EXPECT_EQ(run({"bf-approx", data("f1.json"), "--degrees", "2,0,2"}).code, 2);
}

TEST(CliVerifyExamples, JsonReportAndTightenedFillTolerance) {
  const CliRun ok = run({"verify-examples", "--report", "json"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  const auto doc = nlohmann::json::parse(ok.out);
  EXPECT_TRUE(doc["passed"].get<bool>());
  ASSERT_EQ(doc["checks"].size(), 11u);
  for (const auto& c : doc["checks"]) {
    for (const char* key : {"id", "title", "passed", "measured", "threshold", "seconds", "detail"}) {
      EXPECT_TRUE(c.contains(key)) << key;
    }
  }

  const CliRun tight = run({"verify-examples", "--fill-tolerance", "0.0005"});
  EXPECT_EQ(tight.code, 1);
  EXPECT_NE(tight.out.find("FAIL  5"), std::string::npos);
  EXPECT_NE(tight.out.find("10/11 checks passed"), std::string::npos);
}

}  // namespace
