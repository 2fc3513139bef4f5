#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "rcrt/cli.hpp"

using namespace rcrt;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "rcrt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const CliResult& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, Bounds) {
  const CliResult r = run({"bounds", "70", "75", "80", "90"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["theta"], "5/2");
}

TEST(Cli, BoundsWithGrouping) {
  const CliResult r = run({"bounds", "180", "220", "486", "513", "--grouping", "[[0,1],[2,3]]"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_NE(r.out.find("\"9/2\""), std::string::npos);
  EXPECT_NE(r.out.find("\"27/4\""), std::string::npos);
}

TEST(Cli, ReconstructConsistent) {
  const CliResult r = run({"reconstruct", "70", "75", "80", "90", "--remainders", "21", "26", "41", "11"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["consistent"], true);
  EXPECT_EQ(j["estimate"], 1001);
}

TEST(Cli, ReconstructCommaList) {
  const CliResult r = run({"reconstruct", "70,75,80,90", "--remainders", "20,25,40,10"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(json_of(r)["estimate"], 1000);
}

TEST(Cli, ReconstructInconsistentExitsOne) {
  const CliResult r = run({"reconstruct", "135", "180", "162", "--remainders", "0", "40", "0"});
  EXPECT_EQ(r.code, exit_inconsistent);
  EXPECT_EQ(json_of(r)["consistent"], false);
}

TEST(Cli, Group) {
  const CliResult ok = run({"group", "210", "143", "77", "128", "81", "125", "169"});
  ASSERT_EQ(ok.code, exit_ok) << ok.err;
  EXPECT_EQ(json_of(ok)["verdict"], "success");
  const CliResult fail = run({"group", "25", "35", "80", "95"});
  ASSERT_EQ(fail.code, exit_ok) << fail.err;
  EXPECT_EQ(json_of(fail)["verdict"], "failure");
}

TEST(Cli, SimulateCsv) {
  const CliResult r = run({"simulate", "135", "180", "162", "--tau-max", "2", "--trials", "500",
                     "--seed", "3"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4U);
  EXPECT_EQ(lines[0], "tau,mean_abs_error,max_abs_error,bound,violations,folding_failures");
  EXPECT_EQ(lines[1], "0,0.000000,0,0,0,0");
  // Same seed, same output.
  EXPECT_EQ(run({"simulate", "135", "180", "162", "--tau-max", "2", "--trials", "500",
                 "--seed", "3"}).out,
            r.out);
}

TEST(Cli, Verify) {
  const CliResult r = run({"verify", "8", "12", "15", "--window", "1"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(json_of(r)["cases"], 120 * 27);
  EXPECT_EQ(run({"verify", "8", "12", "15", "--cap", "100"}).code, exit_cap_exceeded);
}

TEST(Cli, InvalidInput) {
  EXPECT_EQ(run({"bounds", "0", "5"}).code, exit_invalid_input);
  EXPECT_EQ(run({"bounds", "abc"}).code, exit_invalid_input);
  EXPECT_EQ(run({"bounds", "6", "6"}).code, exit_invalid_input);
  EXPECT_EQ(run({"reconstruct", "8", "12", "--remainders", "1"}).code, exit_invalid_input);
  EXPECT_EQ(run({"bounds", "8", "12", "--grouping", "[[0],[5]]"}).code, exit_invalid_input);
  EXPECT_EQ(run({"simulate", "8", "12", "--tau-max", "1", "--error-model", "x"}).code,
            exit_invalid_input);
  EXPECT_EQ(run({"frobnicate"}).code, exit_invalid_input);
  EXPECT_EQ(run({}).code, exit_invalid_input);
}

TEST(Cli, Help) {
  const CliResult r = run({"--help"});
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_NE((r.out + r.err).find("simulate"), std::string::npos);
}
