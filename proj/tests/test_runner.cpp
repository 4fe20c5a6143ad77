#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "io.hpp"
#include "runner.hpp"

using namespace yf;
using nlohmann::json;

namespace {

// Small grid and sample counts keep each run well under a second.
json small(json extra = json::object()) {
  json j = {{"grid", {{"ns", 16}, {"nt", 16}}}, {"samples", 2000}, {"random_functionals", 2}, {"paths", 4}};
  j.merge_patch(extra);
  return j;
}

RunResult run(std::string_view command, const json& overrides, const std::string& config = "") {
  return run_command(command, config, overrides.dump());
}

json summary_of(const RunResult& r) { return json::parse(r.summary_json); }

class SeedEnv : public ::testing::Test {
 protected:
  void SetUp() override { ::unsetenv("YEHFEYNMAN_SEED"); }
  void TearDown() override { ::unsetenv("YEHFEYNMAN_SEED"); }
};

}  // namespace

TEST(Runner, UnknownCommandIsUsageError) {
  EXPECT_EQ(run_command("frobnicate", "", "").exit_code, kExitUsage);
}

TEST(Runner, ZeroQIsRejectedBeforeRunning) {
  const auto r = run("fubini", small({{"q", 0}}));
  EXPECT_EQ(r.exit_code, kExitUsage);
  EXPECT_TRUE(r.report.empty());
  EXPECT_NE(r.error.find("q"), std::string::npos);
}

TEST(Runner, ConfigValidation) {
  EXPECT_EQ(run("fubini", small({{"bogus", 1}})).exit_code, kExitUsage);
  EXPECT_EQ(run("fubini", small({{"grid", {{"nx", 3}}}})).exit_code, kExitUsage);
  EXPECT_EQ(run("fubini", small({{"lambda", -1}})).exit_code, kExitUsage);
  EXPECT_EQ(run("fubini", small({{"samples", 1}})).exit_code, kExitUsage);
  EXPECT_EQ(run("fubini", small({{"kernels", {"nonsense("}}})).exit_code, kExitUsage);
  EXPECT_EQ(run("fubini", small({{"checks", {"relationship_I"}}})).exit_code, kExitUsage);
  EXPECT_EQ(run_command("fubini", "", "[1, 2]").exit_code, kExitUsage);
  EXPECT_EQ(run_command("fubini", "/nonexistent/config.json", "").exit_code, kExitUsage);
}

TEST(Runner, FubiniWithH4Passes) {
  const auto r = run("fubini", small({{"kernels", {"H4"}}, {"checks", {"fubini"}}}));
  EXPECT_EQ(r.exit_code, kExitPass) << r.report;
  const auto s = summary_of(r);
  EXPECT_EQ(s.at("failed"), 0);
  EXPECT_EQ(s.at("passed"), 2);
}

TEST(Runner, ConvolutionRelationshipIPasses) {
  const auto r = run("convolution", small({{"checks", {"relationship_I"}}}));
  EXPECT_EQ(r.exit_code, kExitPass) << r.report;
  EXPECT_NE(r.report.find("check=relationship_I case=k1k2-pair mode=exact status=pass"), std::string::npos);
}

TEST(Runner, DegenerateParametersAreReportedAsErrors) {
  const auto r = run("transform", small({{"qs", {3, -3}}, {"checks", {"transform_q_composition"}}}));
  EXPECT_EQ(r.exit_code, kExitError);
  EXPECT_NE(r.report.find("status=error code=degenerate-parameter"), std::string::npos) << r.report;
}

TEST(Runner, SuiteIsReproducibleAcrossWorkerCounts) {
  const auto a = run("suite", small({{"workers", 1}}));
  const auto b = run("suite", small({{"workers", 1}}));
  const auto c = run("suite", small({{"workers", 4}}));
  EXPECT_EQ(a.exit_code, kExitPass) << a.report;
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.report, c.report);
  EXPECT_EQ(a.summary_json, c.summary_json);
}

TEST(Runner, IntegrateWritesConvergenceCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "yf_runner_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "conv.csv").string();
  const auto r = run("integrate", small({{"samples", 10000}, {"csv", csv}}));
  EXPECT_EQ(r.exit_code, kExitPass) << r.report;
  const auto text = read_text_file(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 15);
  const auto s = summary_of(r);
  EXPECT_EQ(s.at("estimate").at("n"), 10000);
}

TEST(Runner, UnwritableOutputIsRuntimeError) {
  const auto r = run("integrate", small({{"csv", "/nonexistent-dir/conv.csv"}}));
  EXPECT_EQ(r.exit_code, kExitError);
}

TEST_F(SeedEnv, PrecedenceOfSeedSources) {
  EXPECT_EQ(summary_of(run("fubini", small())).at("seed"), 20261017);

  ::setenv("YEHFEYNMAN_SEED", "77", 1);
  EXPECT_EQ(summary_of(run("fubini", small())).at("seed"), 77);

  const auto dir = std::filesystem::temp_directory_path() / "yf_runner_test";
  std::filesystem::create_directories(dir);
  const auto cfg = (dir / "seed.json").string();
  write_text_file(cfg, R"({"seed": 88})");
  EXPECT_EQ(summary_of(run("fubini", small(), cfg)).at("seed"), 88);
  EXPECT_EQ(summary_of(run("fubini", small({{"seed", 99}}), cfg)).at("seed"), 99);

  ::setenv("YEHFEYNMAN_SEED", "abc", 1);
  EXPECT_EQ(run("fubini", small()).exit_code, kExitUsage);
}

TEST(Runner, DefaultConfigListsEveryKey) {
  const auto d = json::parse(default_config_json());
  for (const char* key : {"grid", "seed", "samples", "q", "lambda", "qs", "kernels", "functionals",
                          "random_functionals", "max_atoms", "paths", "n_inner", "checks", "report",
                          "summary", "csv", "process_csv", "workers"}) {
    EXPECT_TRUE(d.contains(key)) << key;
  }
  EXPECT_EQ(check_names().size(), 13u);
}
