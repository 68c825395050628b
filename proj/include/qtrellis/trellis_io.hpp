#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qtrellis/trellis.hpp"

namespace qtrellis {

// Bit string of a goal label, entry 0 first.
inline std::string label_string(std::uint64_t label, std::size_t bits) {
  std::string s(bits, '0');
  for (std::size_t i = 0; i < bits; ++i)
    if ((label >> i) & 1u) s[i] = '1';
  return s;
}

inline std::uint64_t parse_label_string(const std::string& s) {
  if (s.size() > 64) throw trellis_error("label longer than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v |= std::uint64_t{1} << i;
    else if (s[i] != '0') throw trellis_error("invalid label '" + s + "'");
  }
  return v;
}

inline nlohmann::json to_json(const Trellis& t) {
  using nlohmann::json;
  json j;
  j["depth"] = t.depth();
  j["goal_bits"] = t.goal_bits;
  json levels = json::array();
  for (std::size_t l = 0; l < t.level_sizes.size(); ++l) {
    json vs = json::array();
    for (std::uint32_t v = 0; v < t.level_sizes[l]; ++v) {
      json vj{{"id", v}};
      if (l < t.vertex_tags.size() && v < t.vertex_tags[l].size()) vj["label"] = t.vertex_tags[l][v];
      vs.push_back(vj);
    }
    levels.push_back(json{{"vertices", vs}});
  }
  j["levels"] = levels;
  json sections = json::array();
  for (const auto& s : t.sections) {
    json es = json::array();
    for (const auto& e : s) es.push_back(json{{"from", e.from}, {"to", e.to}, {"label", std::string(1, to_char(e.label))}});
    sections.push_back(es);
  }
  j["sections"] = sections;
  json goals = json::array();
  for (std::size_t g = 0; g < t.goal_count(); ++g)
    goals.push_back(json{{"id", g}, {"logical_label", label_string(t.goal_labels[g], t.goal_bits)}});
  j["goals"] = goals;
  return j;
}

inline Trellis trellis_from_json(const nlohmann::json& j) {
  try {
    Trellis t;
    const auto& levels = j.at("levels");
    t.level_sizes.clear();
    bool tagged = false;
    for (const auto& level : levels) {
      const auto& vs = level.at("vertices");
      t.level_sizes.push_back(static_cast<std::uint32_t>(vs.size()));
      std::vector<std::uint64_t> tags(vs.size(), 0);
      for (const auto& v : vs) {
        const auto id = v.at("id").get<std::size_t>();
        if (id >= vs.size()) throw trellis_error("vertex id out of range");
        if (v.contains("label")) {
          tags[id] = v.at("label").get<std::uint64_t>();
          tagged = true;
        }
      }
      t.vertex_tags.push_back(std::move(tags));
    }
    if (!tagged) t.vertex_tags.clear();
    for (const auto& s : j.at("sections")) {
      std::vector<Edge> es;
      for (const auto& e : s) {
        const auto label = e.at("label").get<std::string>();
        if (label.size() != 1) throw trellis_error("edge label must be one Pauli symbol");
        es.push_back({e.at("from").get<std::uint32_t>(), e.at("to").get<std::uint32_t>(), pauli_from_char(label[0])});
      }
      t.sections.push_back(std::move(es));
    }
    if (j.at("depth").get<std::size_t>() != t.sections.size()) throw trellis_error("depth does not match sections");
    t.goal_bits = j.at("goal_bits").get<std::size_t>();
    if (t.level_sizes.empty()) throw trellis_error("trellis has no levels");
    t.goal_labels.assign(t.level_sizes.back(), 0);
    for (const auto& g : j.at("goals")) {
      const auto id = g.at("id").get<std::size_t>();
      if (id >= t.goal_labels.size()) throw trellis_error("goal id out of range");
      t.goal_labels[id] = parse_label_string(g.at("logical_label").get<std::string>());
    }
    sort_edges(t);
    validate(t);
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw trellis_error(std::string("malformed trellis JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw trellis_error(std::string("malformed trellis JSON: ") + e.what());
  }
}

// Graphviz rendering, one rank per depth.
inline void write_dot(std::ostream& os, const Trellis& t, const std::string& name = "trellis") {
  auto color = [](Pauli p) {
    switch (p) {
      case Pauli::I: return "gray50";
      case Pauli::X: return "red";
      case Pauli::Y: return "darkgreen";
      case Pauli::Z: return "blue";
    }
    return "black";
  };
  auto style = [](Pauli p) { return p == Pauli::I ? "dashed" : "solid"; };
  os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  node [shape=circle, label=\"\", width=0.15];\n";
  for (std::size_t l = 0; l < t.level_sizes.size(); ++l) {
    os << "  { rank=same;";
    for (std::uint32_t v = 0; v < t.level_sizes[l]; ++v) os << " v" << l << '_' << v << ';';
    os << " }\n";
  }
  const std::size_t last = t.depth();
  for (std::uint32_t g = 0; g < t.goal_count(); ++g)
    os << "  v" << last << '_' << g << " [shape=box, width=0.3, label=\"" << label_string(t.goal_labels[g], t.goal_bits)
       << "\"];\n";
  for (std::size_t l = 0; l < t.depth(); ++l)
    for (const auto& e : t.sections[l])
      os << "  v" << l << '_' << e.from << " -> v" << l + 1 << '_' << e.to << " [label=\"" << to_char(e.label)
         << "\", color=" << color(e.label) << ", style=" << style(e.label) << "];\n";
  os << "}\n";
}

inline std::string to_dot(const Trellis& t, const std::string& name = "trellis") {
  std::ostringstream os;
  write_dot(os, t, name);
  return os.str();
}

}  // namespace qtrellis
