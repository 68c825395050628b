#include <gtest/gtest.h>

#include <cmath>

#include "qtrellis/builtin_codes.hpp"
#include "qtrellis/oracle.hpp"

using namespace qtrellis;

TEST(Oracle, EnumerateSmallGroups) {
  const auto g = oracle::enumerate_group({PauliVector::parse("XXXX"), PauliVector::parse("ZZZZ")});
  ASSERT_EQ(g.size(), 4u);
  std::set<std::string> s;
  for (const auto& v : g) s.insert(v.to_string());
  EXPECT_EQ(s, (std::set<std::string>{"IIII", "XXXX", "ZZZZ", "YYYY"}));
  const auto id = oracle::enumerate_group({}, 3);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_TRUE(id[0].is_identity());
  // dependent generators are deduplicated
  EXPECT_EQ(oracle::enumerate_group({PauliVector::parse("XX"), PauliVector::parse("XX")}).size(), 2u);
}

TEST(Oracle, EnumerateIsDeterministic) {
  const auto lc = builtin_code("steane713");
  EXPECT_EQ(oracle::enumerate_group(lc.code.norm_gens()), oracle::enumerate_group(lc.code.norm_gens()));
}

TEST(Oracle, GroupSizesOfBundledCodes) {
  for (const char* name : {"code422", "steane713", "shor913"}) {
    const auto lc = builtin_code(name);
    const auto n = oracle::enumerate_group(lc.code.norm_gens());
    EXPECT_EQ(n.size(), std::size_t{1} << (lc.code.n() + lc.code.k())) << name;
    EXPECT_EQ(oracle::enumerate_group(lc.code.stab_gens()).size(), std::size_t{1} << (lc.code.n() - lc.code.k()));
    for (const auto& w : n) EXPECT_TRUE(lc.code.in_normalizer(w));
  }
}

TEST(Oracle, SizeCap) {
  PauliMatrix many;
  for (int i = 0; i < 23; ++i) many.push_back(PauliVector::x_type(23, std::uint64_t{1} << i));
  EXPECT_THROW(oracle::enumerate_group(many), oracle::oracle_error);
  const auto rm = builtin_code("rm1513");
  EXPECT_NO_THROW(oracle::brute_dml(rm.code, BinaryVector(14), ChannelModel::depolarizing(0.1)));
  PauliMatrix big;
  for (int i = 0; i < 24; ++i) big.push_back(PauliVector::z_type(30, std::uint64_t{1} << i));
  const StabilizerCode wide(big);
  EXPECT_THROW(oracle::brute_ndml(wide, BinaryVector(24), ChannelModel::depolarizing(0.1)), oracle::oracle_error);
}

TEST(Oracle, NdmlZeroSyndrome) {
  const auto lc = builtin_code("code422");
  const auto r = oracle::brute_ndml(lc.code, BinaryVector(2), ChannelModel::depolarizing(0.1));
  EXPECT_TRUE(r.error.is_identity());
  EXPECT_NEAR(r.prob, std::pow(0.9, 4), 1e-15);
}

TEST(Oracle, DmlPartitionsTotal) {
  const auto lc = builtin_code("code422");
  const auto ch = ChannelModel::depolarizing(0.2);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const BinaryVector sigma(2, s);
    const auto probs = oracle::brute_dml(lc.code, sigma, ch);
    ASSERT_EQ(probs.size(), 16u);
    double total = 0;
    for (double p : probs) total += p;
    EXPECT_NEAR(total, oracle::brute_total(lc.code, sigma, ch), 1e-15);
  }
  // all syndromes together cover the whole Pauli group
  double all = 0;
  for (std::uint64_t s = 0; s < 4; ++s) all += oracle::brute_total(lc.code, BinaryVector(2, s), ch);
  EXPECT_NEAR(all, 1.0, 1e-14);
}

TEST(Oracle, CompensatedSum) {
  oracle::CompensatedSum s;
  s.add(1.0L);
  for (int i = 0; i < 1000; ++i) s.add(1e-20L);
  s.add(-1.0L);
  EXPECT_NEAR(static_cast<double>(s.value()), 1e-17, 1e-25);
}
