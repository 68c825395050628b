#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qtrellis/builtin_codes.hpp"
#include "qtrellis/construct.hpp"
#include "qtrellis/decoder.hpp"
#include "qtrellis/oracle.hpp"
#include "test_util.hpp"

using namespace qtrellis;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Fixture {
  LoadedCode lc;
  Trellis n, multi;
  explicit Fixture(const char* name)
      : lc(builtin_code(name)),
        n(build_min_trellis_tof(lc.code)),
        multi(build_multigoal_trellis(lc.code, Construction::extended_shannon)) {}
};

}  // namespace

TEST(Channel, Depolarizing) {
  const auto ch = ChannelModel::depolarizing(0.3);
  EXPECT_DOUBLE_EQ(ch(Pauli::I), 0.7);
  EXPECT_DOUBLE_EQ(ch(Pauli::X), 0.1);
  EXPECT_DOUBLE_EQ(ch(Pauli::Y) + ch(Pauli::Z) + ch(Pauli::X) + ch(Pauli::I), 1.0);
  EXPECT_THROW(ChannelModel::depolarizing(0), std::invalid_argument);
  EXPECT_THROW(ChannelModel::depolarizing(1), std::invalid_argument);
  EXPECT_THROW(ChannelModel::depolarizing(-0.1), std::invalid_argument);
  EXPECT_THROW(ChannelModel::from_probs({0.5, 0.5, 0, 0}), std::invalid_argument);
  EXPECT_THROW(ChannelModel::from_probs({0.5, 0.2, 0.2, 0.2}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(css_sector_channel(0.3, CssMarginal::exact)(Pauli::X), 0.2);
  EXPECT_DOUBLE_EQ(css_sector_channel(0.3, CssMarginal::independent)(Pauli::Z), 0.1);
}

TEST(Ndml, ZeroSyndromeGivesIdentity) {
  Fixture f("code422");
  const auto r = ndml_decode(f.n, f.lc.code, BinaryVector(2), ChannelModel::depolarizing(0.1));
  EXPECT_TRUE(r.error_estimate.is_identity());
  EXPECT_NEAR(std::exp(r.log_prob), std::pow(0.9, 4), 1e-15);
}

TEST(Ndml, WeightOneZForFirstCheck) {
  Fixture f("code422");
  const auto r = ndml_decode(f.n, f.lc.code, BinaryVector::parse("10"), ChannelModel::depolarizing(0.1));
  EXPECT_EQ(r.error_estimate.weight(), 1);
  EXPECT_EQ(r.error_estimate.x_mask(), 0u);
  EXPECT_NEAR(std::exp(r.log_prob), 0.1 / 3 * std::pow(0.9, 3), 1e-15);
  // canonical tie rule picks the lowest-ranked path
  EXPECT_EQ(r.error_estimate.to_string(), "IIIZ");
}

TEST(Ndml, RandomTieModeIsSeededAndValid) {
  Fixture f("code422");
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    NdmlOptions opt;
    opt.tie = TieBreak::random;
    opt.seed = seed;
    const auto r = ndml_decode(f.n, f.lc.code, BinaryVector::parse("10"), ChannelModel::depolarizing(0.1), opt);
    EXPECT_EQ(r.error_estimate.weight(), 1);
    EXPECT_EQ(f.lc.code.syndrome(r.error_estimate).to_string(), "10");
    seen.insert(r.error_estimate.to_string());
    const auto again = ndml_decode(f.n, f.lc.code, BinaryVector::parse("10"), ChannelModel::depolarizing(0.1), opt);
    EXPECT_EQ(again.error_estimate, r.error_estimate);
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(Ndml, MatchesOracleOnAllSyndromes) {
  for (const char* name : {"code422", "steane713"}) {
    Fixture f(name);
    const std::size_t m = f.lc.code.stab_gens().size();
    for (double p : {0.01, 0.1, 0.3, 0.5}) {
      const auto ch = ChannelModel::depolarizing(p);
      for (std::uint64_t s = 0; s < (1u << m); ++s) {
        const BinaryVector sigma(m, s);
        const auto r = ndml_decode(f.n, f.lc.code, sigma, ch);
        const auto b = oracle::brute_ndml(f.lc.code, sigma, ch);
        EXPECT_LT(rel(std::exp(r.log_prob), b.prob), 1e-10) << name << " p=" << p << " s=" << s;
        EXPECT_EQ(f.lc.code.syndrome(r.error_estimate), sigma);
        // the multi-goal trellis presents the same coset
        const auto r2 = ndml_decode(f.multi, f.lc.code, sigma, ch);
        EXPECT_LT(rel(r2.log_prob, r.log_prob), 1e-12);
      }
    }
  }
}

TEST(Ndml, SmallPIsMinimumWeight) {
  Fixture f("steane713");
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const BinaryVector sigma(6, rng() & 63);
    const auto r = ndml_decode(f.n, f.lc.code, sigma, ChannelModel::depolarizing(1e-3));
    EXPECT_EQ(r.error_estimate.weight(), oracle::brute_min_weight(f.lc.code, sigma).weight());
  }
}

TEST(Ndml, SyndromeLengthMismatch) {
  Fixture f("code422");
  EXPECT_THROW(ndml_decode(f.n, f.lc.code, BinaryVector(3), ChannelModel::depolarizing(0.1)), decode_error);
}

TEST(Dml, ZeroSyndromeCosetTable) {
  Fixture f("code422");
  const auto ch = ChannelModel::depolarizing(0.01);
  const auto r = dml_decode(f.multi, f.lc.code, BinaryVector(2), ch);
  EXPECT_EQ(r.winning_logical.bits(), 0u);
  ASSERT_EQ(r.coset_log_probs.size(), 16u);
  const auto b = oracle::brute_dml(f.lc.code, BinaryVector(2), ch);
  for (std::size_t l = 0; l < 16; ++l) EXPECT_LT(rel(std::exp(r.coset_log_probs[l]), b[l]), 1e-9);
  EXPECT_TRUE(f.lc.code.in_stabilizer_group(r.error_estimate));
}

TEST(Dml, MatchesOracleAndPartitionsCoset) {
  for (const char* name : {"code422", "steane713"}) {
    Fixture f(name);
    const std::size_t m = f.lc.code.stab_gens().size();
    for (double p : {0.01, 0.1, 0.3}) {
      const auto ch = ChannelModel::depolarizing(p);
      for (std::uint64_t s = 0; s < (1u << m); ++s) {
        const BinaryVector sigma(m, s);
        const auto r = dml_decode(f.multi, f.lc.code, sigma, ch);
        const auto b = oracle::brute_dml(f.lc.code, sigma, ch);
        double total = 0;
        for (std::size_t l = 0; l < b.size(); ++l) {
          EXPECT_LT(rel(std::exp(r.coset_log_probs[l]), b[l]), 1e-9) << name << " s=" << s << " l=" << l;
          total += std::exp(r.coset_log_probs[l]);
        }
        EXPECT_LT(rel(total, oracle::brute_total(f.lc.code, sigma, ch)), 1e-9);
        EXPECT_EQ(f.lc.code.syndrome(r.error_estimate), sigma);
        // the estimate lies in the winning coset
        const PauliVector w = r.error_estimate * f.lc.code.representative(sigma);
        EXPECT_EQ(f.lc.code.logical_label(w), r.winning_logical);
      }
    }
  }
}

TEST(Dml, LogAndLinearDomainsAgree) {
  std::mt19937_64 rng(91);
  for (int i = 0; i < 10; ++i) {
    const auto c = test_support::random_code(rng, 7);
    const auto t = build_multigoal_trellis(c, Construction::extended_shannon);
    for (double p : {1e-3, 0.05, 0.4}) {
      const auto ch = ChannelModel::depolarizing(p);
      const BinaryVector sigma(c.stab_gens().size(), rng());
      const auto a = dml_decode(t, c, sigma, ch, Domain::log);
      const auto b = dml_decode(t, c, sigma, ch, Domain::linear);
      for (std::size_t l = 0; l < a.coset_log_probs.size(); ++l)
        EXPECT_LT(rel(std::exp(a.coset_log_probs[l]), std::exp(b.coset_log_probs[l])), 1e-12);
      EXPECT_EQ(a.winning_logical, b.winning_logical);
    }
  }
}

TEST(Dml, InvariantUnderStabilizerShiftOfRepresentative) {
  Fixture f("steane713");
  const auto ch = ChannelModel::depolarizing(0.1);
  std::mt19937_64 rng(6);
  const auto group = oracle::enumerate_group(f.lc.code.stab_gens());
  for (int i = 0; i < 20; ++i) {
    const BinaryVector sigma(6, rng() & 63);
    const PauliVector rho = f.lc.code.representative(sigma);
    const PauliVector shifted = rho * group[rng() % group.size()];
    const auto a = sum_product(f.multi, rho, ch);
    const auto b = sum_product(f.multi, shifted, ch);
    for (std::size_t l = 0; l < a.coset_log_probs.size(); ++l)
      EXPECT_LT(rel(a.coset_log_probs[l], b.coset_log_probs[l]), 1e-12);
  }
}

TEST(Dml, OperationCounts) {
  for (const auto& b : kBuiltinCodes) {
    const auto lc = builtin_code(b.name);
    const auto t = build_multigoal_trellis(lc.code, Construction::extended_shannon);
    const auto r = dml_decode(t, lc.code, BinaryVector(lc.code.stab_gens().size()), ChannelModel::depolarizing(0.1));
    EXPECT_EQ(r.ops.multiplications, t.num_edges());
    EXPECT_EQ(r.ops.additions, t.num_edges() - t.num_vertices() + 1);
  }
}

TEST(Dml, RequiresCosetGoals) {
  Fixture f("code422");
  EXPECT_THROW(dml_decode(f.n, f.lc.code, BinaryVector(2), ChannelModel::depolarizing(0.1)), decode_error);
}

TEST(CssDml, FourQubitSectorsMatchOracle) {
  const auto lc = builtin_code("code422");
  const auto& css = *lc.css;
  const auto tx = build_multigoal_trellis(css.x_sector(), Construction::extended_shannon);
  const auto tz = build_multigoal_trellis(css.z_sector(), Construction::extended_shannon);
  const auto ch = css_sector_channel(0.1, CssMarginal::independent);
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t b = 0; b < 2; ++b) {
      const BinaryVector sx(1, a), sz(1, b);
      const auto r = css_dml_decode(tx, tz, css, sx, sz, ch);
      const auto px = oracle::brute_coset_probs(css.x_sector(), joint_representative(css.x_sector(), sx), ch);
      const auto pz = oracle::brute_coset_probs(css.z_sector(), joint_representative(css.z_sector(), sz), ch);
      const auto bx = std::max_element(px.begin(), px.end()) - px.begin();
      const auto bz = std::max_element(pz.begin(), pz.end()) - pz.begin();
      EXPECT_EQ(r.winning_logical, css.join_label(bx, bz));
      EXPECT_EQ(lc.code.syndrome(r.error_estimate), css.join_syndrome(sx, sz));
    }
}

TEST(CssDml, ZeroSyndromeIsStabilizer) {
  const auto lc = builtin_code("steane713");
  const auto& css = *lc.css;
  const auto tx = build_multigoal_trellis(css.x_sector(), Construction::extended_shannon);
  const auto tz = build_multigoal_trellis(css.z_sector(), Construction::extended_shannon);
  const auto r = css_dml_decode(tx, tz, css, BinaryVector(3), BinaryVector(3), css_sector_channel(0.01, CssMarginal::independent));
  EXPECT_EQ(r.winning_logical.bits(), 0u);
  EXPECT_TRUE(lc.code.in_stabilizer_group(r.error_estimate));
}

TEST(CssDml, SteaneSyndromeOfTargetError) {
  // syndromes actually produced by Z I Z I I I Y: S_X gives 001, S_Z gives 010
  const auto lc = builtin_code("steane713");
  const auto& css = *lc.css;
  const auto tx = build_multigoal_trellis(css.x_sector(), Construction::extended_shannon);
  const auto tz = build_multigoal_trellis(css.z_sector(), Construction::extended_shannon);
  const auto target = PauliVector::parse("ZIZIIIY");
  for (double p : {0.01, 0.05, 0.1}) {
    const auto ch = css_sector_channel(p, CssMarginal::independent);
    const auto r = css_dml_decode(tx, tz, css, BinaryVector::parse("001"), BinaryVector::parse("010"), ch);
    EXPECT_TRUE(lc.code.in_stabilizer_group(r.error_estimate * target)) << p;
  }
}

TEST(CssDml, ExactMarginalStillDecodes) {
  const auto lc = builtin_code("steane713");
  const auto& css = *lc.css;
  const auto tx = build_multigoal_trellis(css.x_sector(), Construction::extended_shannon);
  const auto tz = build_multigoal_trellis(css.z_sector(), Construction::extended_shannon);
  const auto r = css_dml_decode(tx, tz, css, BinaryVector::parse("100"), BinaryVector(3),
                                css_sector_channel(0.05, CssMarginal::exact));
  EXPECT_EQ(r.error_estimate.weight(), 1);
}

TEST(CssDml, LengthMismatch) {
  const auto lc = builtin_code("steane713");
  const auto& css = *lc.css;
  const auto tx = build_multigoal_trellis(css.x_sector(), Construction::extended_shannon);
  const auto tz = build_multigoal_trellis(css.z_sector(), Construction::extended_shannon);
  EXPECT_THROW(css_dml_decode(tx, tz, css, BinaryVector(2), BinaryVector(3), ChannelModel::depolarizing(0.1)),
               decode_error);
}

TEST(JointRepresentative, HasRequestedSyndrome) {
  const auto lc = builtin_code("shor913");
  const auto& css = *lc.css;
  for (const auto& jc : {css.x_sector(), css.z_sector()}) {
    for (std::uint64_t s = 0; s < (1u << jc.checks.size()); ++s) {
      const BinaryVector sigma(jc.checks.size(), s);
      const auto rho = joint_representative(jc, sigma);
      EXPECT_EQ(syndrome(rho, jc.checks), sigma);
      if (jc.alphabet == JointCode::Alphabet::z_only) EXPECT_EQ(rho.x_mask(), 0u);
      else EXPECT_EQ(rho.z_mask(), 0u);
    }
  }
}
