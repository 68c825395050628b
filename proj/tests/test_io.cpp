#include <gtest/gtest.h>

#include "qtrellis/builtin_codes.hpp"
#include "qtrellis/construct.hpp"
#include "qtrellis/trellis_io.hpp"

using namespace qtrellis;

TEST(TrellisJson, Schema) {
  const auto lc = builtin_code("code422");
  const auto t = build_multigoal_trellis(lc.code, Construction::extended_shannon);
  const auto j = to_json(t);
  EXPECT_EQ(j["depth"], 4);
  ASSERT_EQ(j["levels"].size(), 5u);
  EXPECT_EQ(j["levels"][2]["vertices"].size(), 16u);
  EXPECT_EQ(j["sections"][0].size(), 4u);
  EXPECT_EQ(j["sections"][0][1]["label"], "X");
  ASSERT_EQ(j["goals"].size(), 16u);
  EXPECT_EQ(j["goals"][0]["logical_label"].get<std::string>().size(), 4u);
}

TEST(TrellisJson, RoundTrip) {
  for (const auto& b : kBuiltinCodes) {
    const auto lc = builtin_code(b.name);
    for (auto m : {Construction::extended_shannon, Construction::bcjr_wolf}) {
      const auto t = build_multigoal_trellis(lc.css->x_sector(), m);
      const auto back = trellis_from_json(nlohmann::json::parse(to_json(t).dump()));
      EXPECT_EQ(back.sections, t.sections);
      EXPECT_EQ(back.level_sizes, t.level_sizes);
      EXPECT_EQ(back.goal_labels, t.goal_labels);
      EXPECT_EQ(back.goal_bits, t.goal_bits);
    }
  }
}

TEST(TrellisJson, KeepsVertexTags) {
  Trellis t = bcjr_wolf(builtin_code("code422").code.stab_gens());
  const auto j = to_json(t);
  EXPECT_TRUE(j["levels"][1]["vertices"][0].contains("label"));
  const auto back = trellis_from_json(j);
  EXPECT_EQ(back.vertex_tags, t.vertex_tags);
}

TEST(TrellisJson, StableAcrossRuns) {
  const auto lc = builtin_code("steane713");
  EXPECT_EQ(to_json(build_multigoal_trellis(lc.code, Construction::merge)).dump(),
            to_json(build_multigoal_trellis(lc.code, Construction::bcjr_wolf)).dump());
}

TEST(TrellisJson, RejectsMalformed) {
  EXPECT_THROW(trellis_from_json(nlohmann::json::parse("{}")), trellis_error);
  auto j = to_json(straight_line(2));
  j["depth"] = 3;
  EXPECT_THROW(trellis_from_json(j), trellis_error);
  j = to_json(straight_line(2));
  j["sections"][0][0]["label"] = "Q";
  EXPECT_THROW(trellis_from_json(j), trellis_error);
  j = to_json(straight_line(2));
  j["sections"][1][0]["to"] = 5;
  EXPECT_THROW(trellis_from_json(j), trellis_error);
}

TEST(TrellisDot, Layout) {
  const auto lc = builtin_code("code422");
  const auto t = build_multigoal_trellis(lc.css->x_sector(), Construction::extended_shannon);
  const auto dot = to_dot(t, "code422");
  EXPECT_EQ(dot.rfind("digraph \"code422\"", 0), 0u);
  EXPECT_NE(dot.find("rankdir=LR"), std::string::npos);
  EXPECT_NE(dot.find("rank=same"), std::string::npos);
  std::size_t arrows = 0;
  for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++arrows;
  EXPECT_EQ(arrows, t.num_edges());
  EXPECT_NE(dot.find("color=blue"), std::string::npos);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);
}

TEST(LabelString, RoundTrip) {
  EXPECT_EQ(label_string(0b1101, 4), "1011");
  EXPECT_EQ(parse_label_string("1011"), 0b1101u);
  EXPECT_THROW(parse_label_string("12"), trellis_error);
}
