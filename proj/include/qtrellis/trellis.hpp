#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qtrellis/pauli.hpp"

namespace qtrellis {

class trellis_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  Pauli label = Pauli::I;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Depth-partitioned edge-labeled DAG. Level 0 holds the single root; every
// vertex of the last level is a goal carrying a distinct tag (logical coset
// label or syndrome). Section t joins level t to level t + 1 and is kept
// sorted by (from, label rank, to).
struct Trellis {
  std::vector<std::uint32_t> level_sizes{1};
  std::vector<std::vector<Edge>> sections;
  std::size_t goal_bits = 0;
  std::vector<std::uint64_t> goal_labels{0};
  // Optional per-vertex metadata (partial syndromes of BCJR-Wolf trellises).
  std::vector<std::vector<std::uint64_t>> vertex_tags;

  std::size_t depth() const noexcept { return sections.size(); }
  std::size_t goal_count() const noexcept { return level_sizes.back(); }

  std::size_t num_vertices() const noexcept {
    return std::accumulate(level_sizes.begin(), level_sizes.end(), std::size_t{0});
  }
  std::size_t num_edges() const noexcept {
    std::size_t e = 0;
    for (const auto& s : sections) e += s.size();
    return e;
  }
};

namespace detail {

inline bool edge_less(const Edge& a, const Edge& b) {
  if (a.from != b.from) return a.from < b.from;
  if (a.label != b.label) return pauli_rank(a.label) < pauli_rank(b.label);
  return a.to < b.to;
}

inline void sort_section(std::vector<Edge>& s) {
  std::sort(s.begin(), s.end(), edge_less);
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// CSR offsets of a from-sorted section.
inline std::vector<std::uint32_t> out_offsets(const std::vector<Edge>& s, std::size_t n_from) {
  std::vector<std::uint32_t> off(n_from + 1, 0);
  for (const auto& e : s) ++off[e.from + 1];
  for (std::size_t i = 0; i < n_from; ++i) off[i + 1] += off[i];
  return off;
}

}  // namespace detail

inline void sort_edges(Trellis& t) {
  for (auto& s : t.sections) detail::sort_section(s);
}

// Structural consistency; throws trellis_error describing the first violation.
inline void validate(const Trellis& t) {
  if (t.depth() == 0) throw trellis_error("trellis must have depth >= 1");
  if (t.level_sizes.size() != t.depth() + 1) throw trellis_error("level count mismatch");
  if (t.level_sizes[0] != 1) throw trellis_error("level 0 must hold exactly the root");
  for (std::size_t s = 0; s < t.depth(); ++s)
    for (const auto& e : t.sections[s])
      if (e.from >= t.level_sizes[s] || e.to >= t.level_sizes[s + 1])
        throw trellis_error("edge endpoint out of range in section " + std::to_string(s + 1));
  if (t.goal_labels.size() != t.goal_count()) throw trellis_error("one goal label per final vertex expected");
  std::vector<std::uint64_t> labels = t.goal_labels;
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw trellis_error("goal labels must be distinct");
}

// Removes every vertex and edge that is not on a root-to-goal path, keeping
// only goals accepted by `keep_goal` (called with the goal label).
inline void reduce(Trellis& t, const std::function<bool(std::uint64_t)>& keep_goal = {}) {
  const std::size_t d = t.depth();
  std::vector<std::vector<char>> fwd(d + 1), bwd(d + 1);
  for (std::size_t l = 0; l <= d; ++l) {
    fwd[l].assign(t.level_sizes[l], 0);
    bwd[l].assign(t.level_sizes[l], 0);
  }
  fwd[0][0] = 1;
  for (std::size_t s = 0; s < d; ++s)
    for (const auto& e : t.sections[s])
      if (fwd[s][e.from]) fwd[s + 1][e.to] = 1;
  for (std::size_t v = 0; v < t.level_sizes[d]; ++v)
    bwd[d][v] = fwd[d][v] && (!keep_goal || keep_goal(t.goal_labels[v]));
  for (std::size_t s = d; s-- > 0;)
    for (const auto& e : t.sections[s])
      if (bwd[s + 1][e.to] && fwd[s][e.from]) bwd[s][e.from] = 1;
  if (!bwd[0][0]) throw trellis_error("no goal is reachable from the root");

  std::vector<std::vector<std::uint32_t>> remap(d + 1);
  for (std::size_t l = 0; l <= d; ++l) {
    remap[l].assign(t.level_sizes[l], UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < t.level_sizes[l]; ++v)
      if (bwd[l][v]) remap[l][v] = next++;
    if (!t.vertex_tags.empty()) {
      std::vector<std::uint64_t> tags;
      for (std::size_t v = 0; v < t.level_sizes[l]; ++v)
        if (bwd[l][v]) tags.push_back(t.vertex_tags[l][v]);
      t.vertex_tags[l] = std::move(tags);
    }
    if (l == d) {
      std::vector<std::uint64_t> labels;
      for (std::size_t v = 0; v < t.level_sizes[l]; ++v)
        if (bwd[l][v]) labels.push_back(t.goal_labels[v]);
      t.goal_labels = std::move(labels);
    }
    t.level_sizes[l] = next;
  }
  for (std::size_t s = 0; s < d; ++s) {
    std::vector<Edge> kept;
    for (const auto& e : t.sections[s]) {
      const auto f = remap[s][e.from], to = remap[s + 1][e.to];
      if (f != UINT32_MAX && to != UINT32_MAX) kept.push_back({f, to, e.label});
    }
    t.sections[s] = std::move(kept);
    detail::sort_section(t.sections[s]);
  }
}

// One path of identity labels.
inline Trellis straight_line(std::size_t depth) {
  if (depth == 0) throw trellis_error("depth-0 trellises are not supported");
  Trellis t;
  t.level_sizes.assign(depth + 1, 1);
  t.sections.assign(depth, std::vector<Edge>{{0, 0, Pauli::I}});
  return t;
}

// Minimal trellis of {identity, g}. In multi-goal mode the two words end in
// distinct goals (labels 0 and 1) instead of rejoining after the span of g.
inline Trellis atomic_trellis(const PauliVector& g, bool multi_goal) {
  const std::size_t n = g.size();
  Trellis t = straight_line(n);
  if (g.is_identity()) return t;
  const auto left = static_cast<std::size_t>(g.left_index());
  const auto right = static_cast<std::size_t>(g.right_index());
  const std::size_t split_end = multi_goal ? n : right;  // last level with two vertices
  for (std::size_t l = left + 1; l <= split_end; ++l) t.level_sizes[l] = 2;
  for (std::size_t s = 0; s < n; ++s) {
    auto& sec = t.sections[s];
    sec.clear();
    const Pauli sym = g[s];
    if (s < left || (!multi_goal && s > right)) {
      sec.push_back({0, 0, Pauli::I});
    } else if (s == left) {
      const std::uint32_t to = (left + 1 <= split_end) ? 1 : 0;
      sec.push_back({0, 0, Pauli::I});
      sec.push_back({0, to, sym});
    } else if (s < split_end) {
      sec.push_back({0, 0, Pauli::I});
      sec.push_back({1, 1, sym});
    } else {  // s == right, single-goal: rejoin
      sec.push_back({0, 0, Pauli::I});
      sec.push_back({1, 0, sym});
    }
    detail::sort_section(sec);
  }
  if (multi_goal) {
    t.goal_bits = 1;
    t.goal_labels = {0, 1};
  }
  return t;
}

// Sectionwise Cartesian product with label multiplication; only the part
// reachable from the root is generated. Goal labels concatenate (a's bits low).
inline Trellis shannon_product(const Trellis& a, const Trellis& b) {
  if (a.depth() != b.depth()) throw trellis_error("Shannon product needs equal depths");
  if (a.goal_bits + b.goal_bits > 64) throw trellis_error("product goal labels exceed 64 bits");
  const std::size_t d = a.depth();
  Trellis out;
  out.sections.resize(d);
  out.level_sizes.assign(d + 1, 0);
  out.level_sizes[0] = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cur{{0, 0}};
  for (std::size_t s = 0; s < d; ++s) {
    const auto off_a = detail::out_offsets(a.sections[s], a.level_sizes[s]);
    const auto off_b = detail::out_offsets(b.sections[s], b.level_sizes[s]);
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> next;
    auto& sec = out.sections[s];
    for (std::uint32_t i = 0; i < cur.size(); ++i) {
      const auto [va, vb] = cur[i];
      for (auto ia = off_a[va]; ia < off_a[va + 1]; ++ia) {
        const Edge& ea = a.sections[s][ia];
        for (auto ib = off_b[vb]; ib < off_b[vb + 1]; ++ib) {
          const Edge& eb = b.sections[s][ib];
          const std::uint64_t key = (std::uint64_t{ea.to} << 32) | eb.to;
          auto [it, inserted] = ids.try_emplace(key, static_cast<std::uint32_t>(next.size()));
          if (inserted) next.emplace_back(ea.to, eb.to);
          sec.push_back({i, it->second, ea.label * eb.label});
        }
      }
    }
    detail::sort_section(sec);
    out.level_sizes[s + 1] = static_cast<std::uint32_t>(next.size());
    cur = std::move(next);
  }
  out.goal_bits = a.goal_bits + b.goal_bits;
  out.goal_labels.clear();
  for (const auto& [ga, gb] : cur) out.goal_labels.push_back(a.goal_labels[ga] | (b.goal_labels[gb] << a.goal_bits));
  return out;
}

// Product of the atomic trellises of every row (straight line if no rows).
inline Trellis shannon_product_of_rows(const PauliMatrix& rows, std::size_t depth, bool multi_goal) {
  Trellis t = straight_line(depth);
  for (const auto& row : rows) {
    if (row.size() != depth) throw trellis_error("row width does not match trellis depth");
    t = shannon_product(t, atomic_trellis(row, multi_goal));
  }
  return t;
}

// Syndrome bits of symbol p at column `col` against the check rows.
inline std::uint64_t column_syndrome(const PauliMatrix& checks, std::size_t col, Pauli p) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < checks.size(); ++i)
    if (star(checks[i][col], p)) bits |= std::uint64_t{1} << i;
  return bits;
}

// Complete trellis over the alphabet: vertex tags are partial syndromes
// f(v') = f(v) + p * h_t, and goal t carries the full syndrome as its label.
inline Trellis bcjr_wolf(const PauliMatrix& checks, const std::vector<Pauli>& alphabet) {
  if (checks.empty()) throw trellis_error("BCJR-Wolf construction needs a non-empty check matrix");
  if (checks.size() > 64) throw trellis_error("at most 64 check rows supported");
  const std::size_t n = matrix_width(checks);
  if (n == 0) throw trellis_error("depth-0 trellises are not supported");
  Trellis t;
  t.sections.resize(n);
  t.level_sizes.assign(n + 1, 0);
  t.level_sizes[0] = 1;
  t.vertex_tags.assign(n + 1, {});
  t.vertex_tags[0] = {0};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::uint64_t> contrib;
    for (Pauli p : alphabet) contrib.push_back(column_syndrome(checks, s, p));
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    auto& next = t.vertex_tags[s + 1];
    for (std::uint32_t v = 0; v < t.vertex_tags[s].size(); ++v) {
      const std::uint64_t f = t.vertex_tags[s][v];
      for (std::size_t a = 0; a < alphabet.size(); ++a) {
        const std::uint64_t g = f ^ contrib[a];
        auto [it, inserted] = ids.try_emplace(g, static_cast<std::uint32_t>(next.size()));
        if (inserted) next.push_back(g);
        t.sections[s].push_back({v, it->second, alphabet[a]});
      }
    }
    detail::sort_section(t.sections[s]);
    t.level_sizes[s + 1] = static_cast<std::uint32_t>(next.size());
  }
  t.goal_bits = checks.size();
  t.goal_labels = t.vertex_tags[n];
  return t;
}

inline Trellis bcjr_wolf(const PauliMatrix& checks) {
  return bcjr_wolf(checks, {kAllPaulis.begin(), kAllPaulis.end()});
}

// Multiplies every section-i label by rho[i]; the result presents rho times
// the original code.
inline Trellis relabel(Trellis t, const PauliVector& rho) {
  if (rho.size() != t.depth()) throw trellis_error("relabel vector length must equal the trellis depth");
  for (std::size_t s = 0; s < t.depth(); ++s) {
    for (auto& e : t.sections[s]) e.label = e.label * rho[s];
    detail::sort_section(t.sections[s]);
  }
  return t;
}

// Disjoint union of equal-depth trellises with their roots identified.
inline Trellis merge_roots(const std::vector<Trellis>& parts) {
  if (parts.empty()) throw trellis_error("nothing to merge");
  const std::size_t d = parts.front().depth();
  Trellis out;
  out.sections.assign(d, {});
  out.level_sizes.assign(d + 1, 0);
  out.level_sizes[0] = 1;
  out.goal_labels.clear();
  for (const auto& p : parts) {
    if (p.depth() != d) throw trellis_error("merge_roots needs equal depths");
    out.goal_bits = std::max(out.goal_bits, p.goal_bits);
    for (std::size_t s = 0; s < d; ++s) {
      const std::uint32_t from_base = s == 0 ? 0 : out.level_sizes[s] - p.level_sizes[s];
      const std::uint32_t to_base = out.level_sizes[s + 1];
      for (const auto& e : p.sections[s]) out.sections[s].push_back({e.from + from_base, e.to + to_base, e.label});
      out.level_sizes[s + 1] += p.level_sizes[s + 1];
    }
    out.goal_labels.insert(out.goal_labels.end(), p.goal_labels.begin(), p.goal_labels.end());
  }
  sort_edges(out);
  return out;
}

// Trellis where every word is its own path between a shared root and the goal
// of its label.
inline Trellis trivial_trellis(const std::vector<PauliVector>& words, const std::vector<std::uint64_t>& goal_of_word,
                               std::size_t goal_bits) {
  if (words.empty() || words.size() != goal_of_word.size()) throw trellis_error("trivial trellis needs labeled words");
  const std::size_t n = words.front().size();
  if (n == 0) throw trellis_error("depth-0 trellises are not supported");
  std::vector<std::uint64_t> labels = goal_of_word;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  Trellis t;
  t.sections.assign(n, {});
  t.level_sizes.assign(n + 1, static_cast<std::uint32_t>(words.size()));
  t.level_sizes[0] = 1;
  t.level_sizes[n] = static_cast<std::uint32_t>(labels.size());
  for (std::uint32_t w = 0; w < words.size(); ++w) {
    const auto goal = static_cast<std::uint32_t>(
        std::lower_bound(labels.begin(), labels.end(), goal_of_word[w]) - labels.begin());
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint32_t from = s == 0 ? 0 : w;
      const std::uint32_t to = s + 1 == n ? goal : w;
      t.sections[s].push_back({from, to, words[w][s]});
    }
  }
  t.goal_bits = goal_bits;
  t.goal_labels = labels;
  sort_edges(t);
  return t;
}

struct MergeStats {
  std::size_t merges = 0;
  std::vector<std::size_t> vertex_counts;  // |V| after each merge round
};

namespace detail {

// Merges vertices of `level` whose signatures coincide; returns merge count.
inline std::size_t merge_level(Trellis& t, std::size_t level, bool right) {
  const std::size_t d = t.depth();
  const std::size_t count = t.level_sizes[level];
  if (count < 2) return 0;
  std::vector<std::vector<std::pair<int, std::uint32_t>>> sig(count);
  if (right) {
    if (level == d) return 0;  // goals are distinguished by their labels
    for (const auto& e : t.sections[level]) sig[e.from].emplace_back(pauli_rank(e.label), e.to);
  } else {
    if (level == 0) return 0;
    for (const auto& e : t.sections[level - 1]) sig[e.to].emplace_back(pauli_rank(e.label), e.from);
    if (level == d)
      for (std::size_t v = 0; v < count; ++v)
        sig[v].emplace_back(-1, static_cast<std::uint32_t>(v));  // never merge distinct goals
  }
  for (auto& s : sig) std::sort(s.begin(), s.end());
  std::map<std::vector<std::pair<int, std::uint32_t>>, std::uint32_t> classes;
  std::vector<std::uint32_t> remap(count);
  for (std::size_t v = 0; v < count; ++v) {
    auto [it, inserted] = classes.try_emplace(sig[v], static_cast<std::uint32_t>(classes.size()));
    remap[v] = it->second;
  }
  const std::size_t merged = count - classes.size();
  if (merged == 0) return 0;
  if (level > 0) {
    for (auto& e : t.sections[level - 1]) e.to = remap[e.to];
    sort_section(t.sections[level - 1]);
  }
  if (level < d) {
    for (auto& e : t.sections[level]) e.from = remap[e.from];
    sort_section(t.sections[level]);
  }
  if (level == d) {
    std::vector<std::uint64_t> labels(classes.size());
    for (std::size_t v = 0; v < count; ++v) labels[remap[v]] = t.goal_labels[v];
    t.goal_labels = std::move(labels);
  }
  t.level_sizes[level] = static_cast<std::uint32_t>(classes.size());
  return merged;
}

}  // namespace detail

// Repeatedly merges right twins (equal futures) and left twins (equal pasts)
// until none remain. Each merge removes one vertex, so this terminates.
inline Trellis merge_twins(Trellis t, MergeStats* stats = nullptr) {
  validate(t);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t l = t.depth() + 1; l-- > 0;) {
      const std::size_t m = detail::merge_level(t, l, true);
      if (m > 0) {
        changed = true;
        t.vertex_tags.clear();
        if (stats) {
          stats->merges += m;
          stats->vertex_counts.push_back(t.num_vertices());
        }
      }
    }
    for (std::size_t l = 0; l <= t.depth(); ++l) {
      const std::size_t m = detail::merge_level(t, l, false);
      if (m > 0) {
        changed = true;
        t.vertex_tags.clear();
        if (stats) {
          stats->merges += m;
          stats->vertex_counts.push_back(t.num_vertices());
        }
      }
    }
  }
  return t;
}

// No vertex has two outgoing, or two incoming, edges with the same label.
inline bool is_biproper(const Trellis& t) {
  for (std::size_t s = 0; s < t.depth(); ++s) {
    std::vector<std::uint8_t> out(t.level_sizes[s], 0), in(t.level_sizes[s + 1], 0);
    for (const auto& e : t.sections[s]) {
      const auto bit = static_cast<std::uint8_t>(1u << static_cast<unsigned>(e.label));
      if (out[e.from] & bit) return false;
      if (in[e.to] & bit) return false;
      out[e.from] |= bit;
      in[e.to] |= bit;
    }
  }
  return true;
}

// Renumbers vertices in breadth-first discovery order from the root,
// visiting outgoing edges in label order I < X < Y < Z.
inline Trellis canonical_form(const Trellis& t) {
  validate(t);
  const std::size_t d = t.depth();
  Trellis out;
  out.goal_bits = t.goal_bits;
  out.level_sizes = t.level_sizes;
  out.sections.resize(d);
  std::vector<std::uint32_t> order{0};  // old ids of the current level in new-id order
  for (std::size_t s = 0; s < d; ++s) {
    const auto off = detail::out_offsets(t.sections[s], t.level_sizes[s]);
    std::vector<std::uint32_t> remap(t.level_sizes[s + 1], UINT32_MAX);
    std::vector<std::uint32_t> next;
    for (std::uint32_t nid = 0; nid < order.size(); ++nid) {
      const std::uint32_t old = order[nid];
      for (auto i = off[old]; i < off[old + 1]; ++i) {
        const Edge& e = t.sections[s][i];
        if (remap[e.to] == UINT32_MAX) {
          remap[e.to] = static_cast<std::uint32_t>(next.size());
          next.push_back(e.to);
        }
        out.sections[s].push_back({nid, remap[e.to], e.label});
      }
    }
    if (next.size() != t.level_sizes[s + 1]) throw trellis_error("canonical form needs a reduced trellis");
    detail::sort_section(out.sections[s]);
    order = std::move(next);
  }
  out.goal_labels.clear();
  for (auto old : order) out.goal_labels.push_back(t.goal_labels[old]);
  return out;
}

// Equality of canonical forms (sound for one-to-one trellises).
inline bool isomorphic(const Trellis& a, const Trellis& b) {
  const Trellis ca = canonical_form(a), cb = canonical_form(b);
  return ca.level_sizes == cb.level_sizes && ca.sections == cb.sections && ca.goal_labels == cb.goal_labels;
}

struct ComplexityReport {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  long long viterbi_cost = 0;  // 2|E| - |V|
  std::vector<std::size_t> state_profile;
  std::vector<std::size_t> edge_profile;
};

inline ComplexityReport complexity(const Trellis& t) {
  ComplexityReport r;
  for (auto s : t.level_sizes) r.state_profile.push_back(s);
  for (const auto& s : t.sections) r.edge_profile.push_back(s.size());
  r.num_vertices = t.num_vertices();
  r.num_edges = t.num_edges();
  r.viterbi_cost = 2 * static_cast<long long>(r.num_edges) - static_cast<long long>(r.num_vertices);
  return r;
}

// One word per goal (indexed like goal_labels): the path reached by always
// taking the first incoming edge.
inline std::vector<PauliVector> goal_words(const Trellis& t) {
  const std::size_t d = t.depth();
  std::vector<std::vector<const Edge*>> parent(d + 1);
  for (std::size_t l = 0; l <= d; ++l) parent[l].assign(t.level_sizes[l], nullptr);
  for (std::size_t s = 0; s < d; ++s)
    for (const auto& e : t.sections[s])
      if (!parent[s + 1][e.to]) parent[s + 1][e.to] = &e;
  std::vector<PauliVector> words;
  for (std::uint32_t g = 0; g < t.level_sizes[d]; ++g) {
    PauliVector w(d);
    std::uint32_t v = g;
    for (std::size_t l = d; l > 0; --l) {
      const Edge* e = parent[l][v];
      if (!e) throw trellis_error("goal not reachable from the root");
      w.set(l - 1, e->label);
      v = e->from;
    }
    words.push_back(w);
  }
  return words;
}

// All root-to-goal words with the goal label they end at (small trellises only).
inline std::vector<std::pair<PauliVector, std::uint64_t>> enumerate_paths(const Trellis& t,
                                                                         std::size_t limit = 1u << 22) {
  const std::size_t d = t.depth();
  std::vector<std::vector<std::uint32_t>> off(d);
  for (std::size_t s = 0; s < d; ++s) off[s] = detail::out_offsets(t.sections[s], t.level_sizes[s]);
  std::vector<std::pair<PauliVector, std::uint64_t>> out;
  PauliVector w(d);
  std::function<void(std::size_t, std::uint32_t)> walk = [&](std::size_t s, std::uint32_t v) {
    if (s == d) {
      if (out.size() >= limit) throw trellis_error("path enumeration limit exceeded");
      out.emplace_back(w, t.goal_labels[v]);
      return;
    }
    for (auto i = off[s][v]; i < off[s][v + 1]; ++i) {
      const Edge& e = t.sections[s][i];
      w.set(s, e.label);
      walk(s + 1, e.to);
    }
  };
  walk(0, 0);
  return out;
}

// Keeps the first `depth` sections; the vertices of the new last level become
// the goals (labels reset to 0, callers assign them).
inline Trellis truncate(const Trellis& t, std::size_t depth) {
  if (depth == 0 || depth > t.depth()) throw trellis_error("truncation depth out of range");
  Trellis out;
  out.level_sizes.assign(t.level_sizes.begin(), t.level_sizes.begin() + static_cast<long>(depth) + 1);
  out.sections.assign(t.sections.begin(), t.sections.begin() + static_cast<long>(depth));
  out.goal_labels.assign(out.level_sizes.back(), 0);
  return out;
}

}  // namespace qtrellis
