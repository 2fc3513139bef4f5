#include <gtest/gtest.h>

#include <sstream>

#include "rcrt/simulation.hpp"

using namespace rcrt;

namespace {

TrialConfig small_config(unsigned long tau, std::uint64_t trials = 5000) {
  TrialConfig cfg{ModuliSet{135, 180, 162}};
  cfg.tau = tau;
  cfg.trials = trials;
  return cfg;
}

}  // namespace

TEST(SplitMix, KnownSequence) {
  // Reference values of the published SplitMix64 generator seeded with 0.
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(g.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(g.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix, BelowStaysInRange) {
  SplitMix64 g(5);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = g.below(7);
    ASSERT_LT(v, 7U);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  const Integer big("340282366920938463463374607431768211457");  // 2^128 + 1
  for (int i = 0; i < 200; ++i) {
    const Integer v = g.below(big);
    ASSERT_GE(v, 0);
    ASSERT_LT(v, big);
  }
  EXPECT_EQ(g.below(Integer(1)), 0);
}

TEST(Trials, ZeroErrorIsExact) {
  const TrialStats s = run_trials(small_config(0));
  EXPECT_EQ(s.trials, 5000U);
  EXPECT_EQ(s.max_abs_error, 0);
  EXPECT_EQ(s.mean_abs_error, Rational(0));
  EXPECT_EQ(s.violations, 0U);
  EXPECT_EQ(s.folding_failures, 0U);
  EXPECT_TRUE(s.in_regime);
}

TEST(Trials, BelowThetaNoViolations) {
  for (unsigned long tau = 0; tau <= 6; ++tau) {
    const TrialStats s = run_trials(small_config(tau));
    EXPECT_EQ(s.violations, 0U) << tau;
    EXPECT_LE(s.max_abs_error, static_cast<long>(tau));
    EXPECT_LE(s.mean_abs_error, Rational(Integer(s.max_abs_error)));
    EXPECT_EQ(s.bound, Rational(static_cast<long>(tau)));
    EXPECT_TRUE(s.in_regime);
  }
  EXPECT_FALSE(run_trials(small_config(7, 10)).in_regime);
}

TEST(Trials, LargeErrorsBreakRecovery) {
  const TrialStats s = run_trials(small_config(25, 20000));
  EXPECT_GT(s.violations, 0U);
  EXPECT_GT(s.max_abs_error, 25);
}

TEST(Trials, DeterministicAcrossThreadCounts) {
  TrialConfig cfg = small_config(20, 3000);
  const TrialStats serial = run_trials(cfg);
  cfg.threads = 4;
  EXPECT_EQ(run_trials(cfg), serial);
  cfg.threads = 1;
  cfg.seed = 2;
  EXPECT_NE(run_trials(cfg).mean_abs_error, serial.mean_abs_error);
}

TEST(Trials, TwoStagePlan) {
  TrialConfig cfg = small_config(11, 5000);
  cfg.tree = GroupTree::parse("[[0,1],[2]]");
  const TrialStats s = run_trials(cfg);
  EXPECT_TRUE(s.in_regime);
  EXPECT_EQ(s.violations, 0U);
  EXPECT_LE(s.max_abs_error, 11);
  EXPECT_EQ(s.bound, Rational(11));
}

TEST(Trials, SymmetricAndClamped) {
  TrialConfig cfg = small_config(6, 3000);
  cfg.error_model = ErrorModel::symmetric;
  cfg.clamp_remainders = true;
  const TrialStats s = run_trials(cfg);
  EXPECT_EQ(s.violations, 0U);
  EXPECT_LE(s.max_abs_error, 6);
}

TEST(Trials, InvalidTreeRejected) {
  TrialConfig cfg = small_config(1, 10);
  cfg.tree = GroupTree::parse("[[0,1],[3]]");
  EXPECT_THROW(run_trials(cfg), std::invalid_argument);
}

TEST(ErrorModelText, RoundTrip) {
  EXPECT_EQ(parse_error_model("one-sided"), ErrorModel::one_sided);
  EXPECT_EQ(parse_error_model("symmetric"), ErrorModel::symmetric);
  EXPECT_STREQ(to_string(ErrorModel::one_sided), "one-sided");
  EXPECT_THROW(parse_error_model("gaussian"), std::invalid_argument);
}

TEST(Csv, HeaderAndRows) {
  const std::vector<unsigned long> taus{0, 3};
  const auto rows = sweep(small_config(0, 200), taus);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[1].tau, 3U);
  std::ostringstream os;
  write_csv(os, rows);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "tau,mean_abs_error,max_abs_error,bound,violations,folding_failures");
  std::getline(is, line);
  EXPECT_EQ(line, "0,0.000000,0,0,0,0");
  std::getline(is, line);
  EXPECT_EQ(line.substr(0, 2), "3,");
  EXPECT_FALSE(std::getline(is, line));
}
