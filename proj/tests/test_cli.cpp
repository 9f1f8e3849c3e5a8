#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spvote/cli.hpp"

namespace fs = std::filesystem;
using spvote::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(SPVOTE_FIXTURE_DIR) + "/" + name; }

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path temp_dir() {
  const auto d = fs::temp_directory_path() / ("spvote_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, Rankings) {
  auto r = invoke({"rankings", "--candidates", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 17u);  // 16 rankings plus the count line
  EXPECT_NE(r.out.find("# 16 "), std::string::npos);
  r = invoke({"rankings", "--candidates", "1"});
  EXPECT_EQ(lines(r.out), 2u);
  r = invoke({"rankings", "--candidates", "6"});
  EXPECT_EQ(lines(r.out), 33u);
  EXPECT_EQ(invoke({"rankings", "--candidates", "0"}).code, 2);
}

TEST(Cli, ElectBloc) {
  const auto r = invoke({"elect", "--profile", fixture("example1.profile"), "--winners", "3", "--method", "bloc"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("winning set: BCE"), std::string::npos);
  EXPECT_NE(r.out.find("tie: no"), std::string::npos);
}

TEST(Cli, ElectCopelandListsTiedSets) {
  const auto r = invoke({"elect", "--profile", fixture("example1.profile"), "--winners", "2", "--method", "copeland"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("winning sets: BC BD BE"), std::string::npos);
}

TEST(Cli, ElectJson) {
  const auto r = invoke({"elect", "--profile", fixture("example1.profile"), "--winners", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["winning_sets"][0]["label"], "AB");
  EXPECT_EQ(j["winning_sets"][0]["members"], nlohmann::json::array({0, 1}));
  EXPECT_EQ(j["tally"]["B"], 140);
}

TEST(Cli, ElectUnanimous) {
  const auto dir = temp_dir();
  std::ofstream(dir / "u.profile") << "m=4\n7: C B D A\n";
  for (int k = 1; k <= 3; ++k) {
    const auto r = invoke({"elect", "--profile", (dir / "u.profile").string(), "--winners", std::to_string(k)});
    const std::string expected[] = {"C", "BC", "BCD"};
    EXPECT_NE(r.out.find("winning set: " + expected[k - 1] + "\n"), std::string::npos) << r.out;
  }
}

TEST(Cli, ElectErrors) {
  EXPECT_EQ(invoke({"elect", "--profile", fixture("example1.profile"), "--winners", "5"}).code, 2);
  EXPECT_EQ(invoke({"elect", "--profile", "/nonexistent.profile", "--winners", "2"}).code, 2);
  EXPECT_EQ(invoke({"elect", "--profile", fixture("example1.profile"), "--winners", "2", "--method", "stv"}).code, 2);
  const auto dir = temp_dir();
  std::ofstream(dir / "bad.profile") << "m=3\n1: A B Q\n";
  const auto r = invoke({"elect", "--profile", (dir / "bad.profile").string(), "--winners", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  std::ofstream(dir / "even.profile") << "m=3\n2: A B C\n";
  EXPECT_EQ(invoke({"elect", "--profile", (dir / "even.profile").string(), "--winners", "1"}).code, 2);
}

TEST(Cli, ClassifyCenterSqueeze) {
  const auto r = invoke({"classify", "--profile", fixture("center_squeeze61.profile"), "--set", "B,D"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["condorcet_set"], false);
  EXPECT_EQ(j["locally_stable_majority"], true);
  EXPECT_EQ(j["locally_stable_droop"], false);
}

TEST(Cli, ClassifyAllCandidatesAndBce) {
  auto r = invoke({"classify", "--profile", fixture("center_squeeze61.profile"), "--set", "A,B,C,D,E"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["gehrlein_stable"], true);
  r = invoke({"classify", "--profile", fixture("m7_bce.profile"), "--set", "B C E", "--quota", "majority"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["gehrlein_stable"], false);
  EXPECT_EQ(j["condorcet_set"], true);
  EXPECT_EQ(j["locally_stable_majority"], true);
  EXPECT_FALSE(j.contains("locally_stable_droop"));
}

TEST(Cli, ClassifyQuotasAndText) {
  const auto r = invoke({"classify", "--profile", fixture("center_squeeze61.profile"), "--set", "BD", "--quota", "21",
                         "--quota", "22", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("locally stable (q21, q=21): no"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("locally stable (q22, q=22): yes"), std::string::npos);
}

TEST(Cli, ClassifyErrors) {
  const auto p = fixture("center_squeeze61.profile");
  EXPECT_EQ(invoke({"classify", "--profile", p, "--set", "B,Q"}).code, 2);
  EXPECT_EQ(invoke({"classify", "--profile", p, "--set", "B,B"}).code, 2);
  EXPECT_EQ(invoke({"classify", "--profile", p, "--set", "B", "--quota", "100"}).code, 2);
  EXPECT_EQ(invoke({"classify", "--profile", p, "--set", "B", "--quota", "hare"}).code, 2);
}

TEST(Cli, SimulateWritesReportAndSummary) {
  const auto dir = temp_dir();
  const auto out = (dir / "r.json").string();
  const auto r = invoke({"simulate", "--model", "iac", "--candidates", "4", "--winners", "2", "--voters", "101",
                         "--trials", "200", "--seed", "7", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("agreement:"), std::string::npos);
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["trials"], 200);
  EXPECT_EQ(j["counted_trials"], 200);
}

TEST(Cli, SimulateReproducibleAcrossThreads) {
  std::vector<std::string> base = {"simulate", "--model", "en",  "--candidates", "5", "--winners", "2",
                                   "--voters", "101",     "--trials", "150", "--format",   "csv"};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const auto a = invoke(one), b = invoke(four), c = invoke(one);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, SimulateSingleTrial) {
  const std::vector<std::string> args = {"simulate", "--model", "eb", "--candidates", "5", "--winners", "2",
                                         "--trials", "1"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, SimulateThreadsFromEnvironment) {
  ::setenv("SPVOTE_THREADS", "3", 1);
  const auto r = invoke({"simulate", "--model", "iac", "--candidates", "4", "--winners", "2", "--trials", "20",
                         "--voters", "11", "--format", "text"});
  ::unsetenv("SPVOTE_THREADS");
  EXPECT_EQ(r.code, 0);
  ::setenv("SPVOTE_THREADS", "x", 1);
  EXPECT_EQ(invoke({"simulate", "--model", "iac", "--candidates", "4", "--winners", "2"}).code, 2);
  ::unsetenv("SPVOTE_THREADS");
}

TEST(Cli, SimulateDumpPositions) {
  const auto dir = temp_dir();
  const auto csv = (dir / "pos.csv").string();
  const auto r = invoke({"simulate", "--model", "en", "--candidates", "3", "--winners", "1", "--voters", "11",
                         "--trials", "2", "--dump-positions", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "voter_pos,candidate_pos");
  EXPECT_EQ(invoke({"simulate", "--model", "iac", "--candidates", "3", "--winners", "1", "--dump-positions", csv})
                .code,
            2);
}

TEST(Cli, SimulateErrors) {
  EXPECT_EQ(invoke({"simulate", "--model", "ic", "--candidates", "4", "--winners", "2"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--model", "iac", "--candidates", "4", "--winners", "2", "--voters", "100"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--model", "iac", "--candidates", "4", "--winners", "4"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--model", "iac", "--candidates", "4", "--winners", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--model", "iac", "--candidates", "4"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--model", "eb", "--candidates", "4", "--winners", "2", "--eb-stddev", "0"}).code, 2);
}

TEST(Cli, SimulateEbSpread) {
  std::vector<std::string> base = {"simulate", "--model", "eb", "--candidates", "5", "--winners", "2",
                                   "--voters", "101", "--trials", "100", "--format", "json"};
  auto wide = base;
  wide.insert(wide.end(), {"--eb-stddev", "1"});
  const auto a = invoke(base), b = invoke(wide);
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(nlohmann::json::parse(a.out)["eb_stddev"], 0.5);
  EXPECT_EQ(nlohmann::json::parse(b.out)["eb_stddev"], 1.0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"rankings"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, VerifyPassesOnShippedFixtures) {
  const auto r = invoke({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyList) {
  const auto r = invoke({"verify", "--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("center-squeeze-61"), std::string::npos);
  EXPECT_EQ(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, VerifyReportsCorruptedFixture) {
  const auto dir = temp_dir() / "fixtures";
  fs::create_directories(dir);
  for (const auto& e : fs::directory_iterator(SPVOTE_FIXTURE_DIR))
    fs::copy_file(e.path(), dir / e.path().filename(), fs::copy_options::overwrite_existing);
  std::ofstream(dir / "center_squeeze61.profile") << "m=5\n20: B A C D E\n10: C B A D E\n11: C D E B A\n22: D E C B A\n";
  const auto r = invoke({"verify", "--fixtures", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL center-squeeze-61"), std::string::npos) << r.out;
}
