#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct outcome {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; `redirect` is appended verbatim (e.g. "2>&1").
outcome run(const std::string& args, const std::string& redirect = "2>/dev/null") {
  const std::string cmd = std::string("\"") + EMT_CLI_PATH + "\" " + args + " " + redirect;
  outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p)) r.out.append(buf, got);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string("\"") + EMT_SAMPLES_DIR + "/" + name + "\""; }

std::vector<double> values(const nlohmann::json& doc) {
  std::vector<double> v;
  for (const auto& fe : doc.at("focal_elements")) v.push_back(fe.at("value").get<double>());
  return v;
}

}  // namespace

TEST(Cli, ChainCommonalityUsesConsonantScheme) {
  const auto r = run("transform " + sample("m1.json") + " --target commonality");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("scheme"), "consonant");
  const auto v = values(j);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0], 1.0, 1e-12);
  EXPECT_NEAR(v[1], 0.5, 1e-12);
  EXPECT_NEAR(v[2], 0.2, 1e-12);
}

TEST(Cli, ForcedConsonantOnOverlappingSupportFails) {
  const auto r = run("transform " + sample("m2.json") + " --scheme consonant", "2>&1");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("NotConsonant"), std::string::npos);
}

TEST(Cli, VacuousMassGivesOneLine) {
  for (const std::string target : {"commonality", "implicability", "mass", "conj_weight"}) {
    const auto r = run("transform " + sample("vacuous.json") + " --target " + target);
    ASSERT_EQ(r.status, 0) << target;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1) << target;
  }
}

TEST(Cli, ChainsConversionSteps) {
  const auto w = run("transform " + sample("m1.json") + " --target conj_weight");
  ASSERT_EQ(w.status, 0);
  const auto v = values(nlohmann::json::parse(w.out));
  EXPECT_NEAR(v[0], 0.5, 1e-12);
  EXPECT_NEAR(v[1], 0.4, 1e-12);
  EXPECT_NEAR(v[2], 5.0, 1e-12);

  // Weights back to masses goes through the commonality.
  const auto tmp = std::filesystem::temp_directory_path() / "emt_cli_weights.json";
  std::ofstream(tmp) << w.out;
  const auto m = run("transform \"" + tmp.string() + "\" --target mass");
  ASSERT_EQ(m.status, 0);
  const auto back = values(nlohmann::json::parse(m.out));
  EXPECT_NEAR(back[0], 0.5, 1e-9);
  EXPECT_NEAR(back[1], 0.3, 1e-9);
  EXPECT_NEAR(back[2], 0.2, 1e-9);
  std::filesystem::remove(tmp);
}

TEST(Cli, FuseTwoStateExample) {
  const auto r = run("fuse " + sample("two_states.json") + " " + sample("two_states.json"));
  ASSERT_EQ(r.status, 0);
  const auto v = values(nlohmann::json::parse(r.out));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NEAR(v[0], 0.84, 1e-12);
  EXPECT_NEAR(v[1], 0.16, 1e-12);
}

TEST(Cli, FuseWithVacuousLeavesInputUnchanged) {
  const auto r = run("fuse " + sample("m1.json") + " " + sample("vacuous.json"));
  ASSERT_EQ(r.status, 0);
  const auto v = values(nlohmann::json::parse(r.out));
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0], 0.5, 1e-12);
  EXPECT_NEAR(v[1], 0.3, 1e-12);
  EXPECT_NEAR(v[2], 0.2, 1e-12);
}

TEST(Cli, TotalConflictWithNormalizeFails) {
  const auto r = run("fuse " + sample("only_a.json") + " " + sample("only_b.json") + " --normalize", "2>&1");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("TotalConflict"), std::string::npos);
  const auto plain = run("fuse " + sample("only_a.json") + " " + sample("only_b.json"));
  ASSERT_EQ(plain.status, 0);
  EXPECT_EQ(nlohmann::json::parse(plain.out).at("focal_elements")[0].at("set").size(), 0u);
}

TEST(Cli, VerifyPassesAndCatchesFault) {
  const auto ok = run("verify " + sample("m1.json"));
  ASSERT_EQ(ok.status, 0);
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  for (const auto& e : j.at("entries")) EXPECT_LE(e.at("max_deviation").get<double>(), 1e-12);

  const auto bad = run("verify " + sample("m2.json") + " --inject-fault");
  EXPECT_EQ(bad.status, 1);
  const auto jb = nlohmann::json::parse(bad.out);
  EXPECT_FALSE(jb.at("pass").get<bool>());
  bool named = false;
  for (const auto& e : jb.at("entries"))
    if (!e.at("pass").get<bool>()) named = named || !e.at("worst_set").get<std::string>().empty();
  EXPECT_TRUE(named);
}

TEST(Cli, VerifyRefusesLargeFrame) {
  const auto r = run("verify " + sample("twenty_states.json"), "2>&1");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("FrameTooLargeForOracle"), std::string::npos);
}

TEST(Cli, BenchConsonantReport) {
  const auto report = std::filesystem::temp_directory_path() / "emt_cli_bench.json";
  const auto r = run("bench --generator consonant --omega 16 --support 16 --seed 1 --report \"" + report.string() + "\"");
  ASSERT_EQ(r.status, 0);
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j.at("ok").get<bool>());
  const auto& inst = j.at("instances")[0];
  EXPECT_EQ(inst.at("fmt_combines"), 16 << 15);
  EXPECT_EQ(inst.at("runs")[0].at("scheme"), "consonant");
  EXPECT_EQ(inst.at("runs")[0].at("zeta_combines"), 15);
  std::filesystem::remove(report);
}

TEST(Cli, BenchRandomReportsEpsilon) {
  const auto r = run("bench --generator random --omega 10 --support 8 --seed 2 --trials 2");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("ok").get<bool>());
  for (const auto& inst : j.at("instances"))
    for (const auto& run : inst.at("runs")) {
      EXPECT_TRUE(run.contains("epsilon"));
      if (run.at("scheme") != "agnostic" && run.at("scheme") != "fmt") {
        EXPECT_LE(run.at("zeta_combines").get<long>(), 10 << 9);
      }
    }
}

TEST(Cli, RejectsBadArguments) {
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("transform " + sample("m1.json") + " --scheme nonsense").status, 0);
  EXPECT_NE(run("transform /nonexistent.json").status, 0);
}
