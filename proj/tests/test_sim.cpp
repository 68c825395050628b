#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qtrellis/builtin_codes.hpp"
#include "qtrellis/oracle.hpp"
#include "qtrellis/sim.hpp"

using namespace qtrellis;

TEST(Sim, SampleFrequencies) {
  const auto ch = ChannelModel::depolarizing(0.3);
  std::mt19937_64 rng(5);
  const int draws = 100000;
  std::array<int, 4> counts{};
  for (int i = 0; i < draws; ++i) ++counts[static_cast<unsigned>(sample_error(1, ch, rng)[0])];
  for (Pauli a : kAllPaulis) {
    const double p = ch(a);
    const double sd = std::sqrt(draws * p * (1 - p));
    EXPECT_LT(std::abs(counts[static_cast<unsigned>(a)] - draws * p), 3 * sd) << to_char(a);
  }
}

TEST(Sim, UniformAtThreeQuarters) {
  const auto ch = ChannelModel::depolarizing(0.75);
  std::mt19937_64 rng(8);
  std::array<int, 4> counts{};
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) ++counts[static_cast<unsigned>(sample_error(1, ch, rng)[0])];
  for (int c : counts) EXPECT_LT(std::abs(c - draws / 4), 3 * std::sqrt(draws * 0.25 * 0.75));
}

TEST(Sim, TrialStreamsAreDistinctAndStable) {
  auto a = trial_rng(1, 0, 0), b = trial_rng(1, 0, 0), c = trial_rng(1, 0, 1), d = trial_rng(1, 1, 0);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(Sim, Wilson) {
  const auto ci = wilson_interval(0, 100);
  EXPECT_EQ(ci.lo, 0.0);
  EXPECT_GT(ci.hi, 0.0);
  EXPECT_LT(ci.hi, 0.05);
  const auto mid = wilson_interval(50, 100);
  EXPECT_NEAR(mid.lo + mid.hi, 1.0, 1e-12);
  EXPECT_NEAR(mid.hi - mid.lo, 2 * 0.0958, 2e-3);
  const auto full = wilson_interval(100, 100);
  EXPECT_EQ(full.hi, 1.0);
}

TEST(Sim, FailurePredicateMatchesEnumeration) {
  const auto lc = builtin_code("code422");
  const auto stab = oracle::enumerate_group(lc.code.stab_gens());
  const auto norm = oracle::enumerate_group(lc.code.norm_gens());
  const PauliVector e = PauliVector::parse("XIIZ");
  for (const auto& w : norm) {
    const bool in_s = std::find(stab.begin(), stab.end(), w) != stab.end();
    EXPECT_EQ(is_logical_failure(lc.code, e * w, e), !in_s);
  }
}

TEST(Sim, DeterministicAcrossThreadCounts) {
  const DecoderSet dec(builtin_code("steane713"));
  SimConfig cfg;
  cfg.code_name = "steane713";
  cfg.modes = {SimMode::ndml, SimMode::dml, SimMode::css};
  cfg.ps = {0.05, 0.2};
  cfg.trials = 700;
  cfg.seed = 42;
  cfg.threads = 1;
  const auto a = run_monte_carlo(dec, cfg);
  cfg.threads = 3;
  const auto b = run_monte_carlo(dec, cfg);
  ASSERT_EQ(a.rows.size(), 6u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].failures, b.rows[i].failures);
    EXPECT_EQ(a.rows[i].ops.multiplications, b.rows[i].ops.multiplications);
  }
  cfg.seed = 43;
  const auto c = run_monte_carlo(dec, cfg);
  bool differs = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) differs |= a.rows[i].failures != c.rows[i].failures;
  EXPECT_TRUE(differs);
}

TEST(Sim, SingleTrialReproducible) {
  const DecoderSet dec(builtin_code("code422"));
  SimConfig cfg;
  cfg.code_name = "code422";
  cfg.ps = {0.3};
  cfg.trials = 1;
  const auto a = run_monte_carlo(dec, cfg), b = run_monte_carlo(dec, cfg);
  EXPECT_EQ(a.rows[0].failures, b.rows[0].failures);
  EXPECT_EQ(a.rows[0].trials, 1u);
}

TEST(Sim, TrellisDmlEqualsOracleDml) {
  // same samples and same tie rule, so the counts agree exactly
  const DecoderSet dec(builtin_code("code422"));
  SimConfig cfg;
  cfg.code_name = "code422";
  cfg.modes = {SimMode::dml, SimMode::oracle_dml};
  cfg.ps = {0.1, 0.3};
  cfg.trials = 2000;
  const auto r = run_monte_carlo(dec, cfg);
  EXPECT_EQ(r.rows[0].failures, r.rows[1].failures);
  EXPECT_EQ(r.rows[2].failures, r.rows[3].failures);
}

TEST(Sim, OpsAccumulate) {
  const DecoderSet dec(builtin_code("code422"));
  SimConfig cfg;
  cfg.code_name = "code422";
  cfg.ps = {0.1};
  cfg.trials = 10;
  const auto r = run_monte_carlo(dec, cfg);
  EXPECT_EQ(r.rows[0].ops.multiplications, 10 * dec.multigoal.num_edges());
}

TEST(Sim, CsvFormat) {
  SimReport r;
  SimRow row;
  row.code = "code422";
  row.p = 0.1;
  row.trials = 4;
  row.failures = 1;
  row.rate = 0.25;
  row.ci_lo = 0.05;
  row.ci_hi = 0.7;
  r.rows.push_back(row);
  std::ostringstream os;
  write_csv(os, r);
  EXPECT_EQ(os.str(), "code,mode,p,trials,failures,rate,ci_lo,ci_hi\ncode422,dml,0.1,4,1,0.25,0.05,0.7\n");
}

TEST(Sim, ParsePList) {
  EXPECT_EQ(parse_p_list("0.1,0.2"), (std::vector<double>{0.1, 0.2}));
  const auto r = parse_p_list("0.05:0.35:0.05");
  ASSERT_EQ(r.size(), 7u);
  EXPECT_DOUBLE_EQ(r.front(), 0.05);
  EXPECT_DOUBLE_EQ(r[2], 0.15);
  EXPECT_DOUBLE_EQ(r.back(), 0.35);
  EXPECT_THROW(parse_p_list(""), sim_error);
  EXPECT_THROW(parse_p_list("abc"), sim_error);
  EXPECT_THROW(parse_p_list("0.1:0.2"), sim_error);
  EXPECT_THROW(parse_p_list("0.1:0.2:0"), sim_error);
  EXPECT_THROW(parse_p_list("0,0.1"), std::invalid_argument);
}

TEST(Sim, InvalidConfig) {
  const DecoderSet dec(builtin_code("code422"));
  SimConfig cfg;
  cfg.ps = {0.1};
  cfg.trials = 0;
  EXPECT_THROW(run_monte_carlo(dec, cfg), sim_error);
  cfg.trials = 5;
  cfg.modes.clear();
  EXPECT_THROW(run_monte_carlo(dec, cfg), sim_error);
  cfg.modes = {SimMode::dml};
  cfg.ps = {1.0};
  EXPECT_THROW(run_monte_carlo(dec, cfg), std::invalid_argument);
  EXPECT_THROW(parse_sim_mode("bogus"), sim_error);
}
