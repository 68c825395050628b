#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qtrellis/code.hpp"
#include "qtrellis/trellis.hpp"

namespace qtrellis {

enum class Construction { extended_shannon, atomic_multigoal, bcjr_wolf, merge };

inline constexpr Construction kAllConstructions[] = {Construction::extended_shannon, Construction::atomic_multigoal,
                                                     Construction::bcjr_wolf, Construction::merge};

inline std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::extended_shannon: return "extended_shannon";
    case Construction::atomic_multigoal: return "atomic_multigoal";
    case Construction::bcjr_wolf: return "bcjr_wolf";
    case Construction::merge: return "merge";
  }
  return "?";
}

inline Construction parse_construction(std::string_view s) {
  for (auto c : kAllConstructions)
    if (to_string(c) == s) return c;
  throw trellis_error("unsupported construction method '" + std::string(s) + "'");
}

// Sets every goal label to the coset label of a word ending there.
inline void label_goals(Trellis& t, const JointCode& jc) {
  const auto words = goal_words(t);
  t.goal_bits = jc.label_bits();
  for (std::size_t g = 0; g < words.size(); ++g) t.goal_labels[g] = jc.label(words[g]);
  validate(t);
}

// Minimal single-goal trellis of the group code generated by `rows`
// (Shannon product of atomic trellises of the TOF matrix).
inline Trellis minimal_trellis_tof(const PauliMatrix& rows, std::size_t depth) {
  Trellis t = shannon_product_of_rows(to_tof(rows), depth, false);
  reduce(t);
  return t;
}

inline Trellis build_min_trellis_tof(const StabilizerCode& code) {
  return minimal_trellis_tof(code.norm_gens(), code.n());
}

namespace detail {

inline Trellis multigoal_extended_shannon(const JointCode& jc) {
  const PauliMatrix restricted = to_restricted_tof(jc.subcode, jc.logicals);
  const PauliMatrix gs(restricted.begin(), restricted.begin() + static_cast<long>(jc.subcode.size()));
  const PauliMatrix gl(restricted.begin() + static_cast<long>(jc.subcode.size()), restricted.end());
  const PauliMatrix extended = to_tof(extend_joint(gs, gl));
  const std::size_t width = jc.n + jc.logicals.size();
  Trellis full = shannon_product_of_rows(extended, width, false);
  reduce(full);
  Trellis t = truncate(full, jc.n);
  label_goals(t, jc);
  return t;
}

inline Trellis multigoal_atomic(const JointCode& jc) {
  const PauliMatrix restricted = to_restricted_tof(jc.subcode, jc.logicals);
  const PauliMatrix gs(restricted.begin(), restricted.begin() + static_cast<long>(jc.subcode.size()));
  const PauliMatrix gl(restricted.begin() + static_cast<long>(jc.subcode.size()), restricted.end());
  Trellis ts = shannon_product_of_rows(gs, jc.n, false);
  Trellis tl = shannon_product_of_rows(gl, jc.n, true);
  Trellis t = shannon_product(tl, ts);
  reduce(t);
  label_goals(t, jc);
  return t;
}

inline Trellis multigoal_bcjr(const JointCode& jc) {
  PauliMatrix checks = jc.checks;
  checks.insert(checks.end(), jc.partners.begin(), jc.partners.end());
  Trellis t = bcjr_wolf(checks, jc.symbols());
  const std::uint64_t code_mask =
      jc.checks.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << jc.checks.size()) - 1);
  reduce(t, [code_mask](std::uint64_t syn) { return (syn & code_mask) == 0; });
  for (auto& g : t.goal_labels) g >>= jc.checks.size();
  t.goal_bits = jc.partners.size();
  validate(t);
  return t;
}

inline Trellis multigoal_merge(const JointCode& jc) {
  const Trellis ts = jc.subcode.empty() ? straight_line(jc.n) : minimal_trellis_tof(jc.subcode, jc.n);
  std::vector<Trellis> cosets;
  const std::uint64_t m = std::uint64_t{1} << jc.logicals.size();
  for (std::uint64_t label = 0; label < m; ++label) {
    Trellis c = relabel(ts, jc.logical_from_label(label));
    c.goal_bits = jc.label_bits();
    c.goal_labels = {label};
    cosets.push_back(std::move(c));
  }
  Trellis t = merge_twins(merge_roots(cosets));
  reduce(t);
  return t;
}

}  // namespace detail

// Minimal multi-goal trellis of a joint code: one goal per coset of the
// subcode, labeled by its logical coordinates.
inline Trellis build_multigoal_trellis(const JointCode& jc, Construction method) {
  if (jc.logicals.size() > 20) throw trellis_error("too many cosets for a multi-goal trellis");
  Trellis t;
  switch (method) {
    case Construction::extended_shannon: t = detail::multigoal_extended_shannon(jc); break;
    case Construction::atomic_multigoal: t = detail::multigoal_atomic(jc); break;
    case Construction::bcjr_wolf: t = detail::multigoal_bcjr(jc); break;
    case Construction::merge: t = detail::multigoal_merge(jc); break;
  }
  return canonical_form(t);
}

inline Trellis build_multigoal_trellis(const StabilizerCode& code, Construction method) {
  return build_multigoal_trellis(JointCode::cosets_of_stabilizer(code), method);
}

// ---------------------------------------------------------------------------
// Complexity bounds

enum class TrellisKind {
  quaternary,  // multi-goal trellis of (N, S) over {I, X, Y, Z}
  binary,      // CSS sector trellis over {I, X} or {I, Z}
};

struct BoundCheck {
  std::string name;
  double value = 0;
  double bound = 0;
  bool holds = false;
  bool tight = false;
};

struct BoundReport {
  std::vector<BoundCheck> checks;
  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

namespace detail {

inline BoundCheck bound_check(std::string name, double value, double bound) {
  const double slack = 1e-9 * std::max(1.0, std::abs(bound));
  return {std::move(name), value, bound, value <= bound + slack, std::abs(value - bound) <= slack};
}

}  // namespace detail

// Evaluates the state-space and total-complexity upper bounds of a minimal
// multi-goal trellis of an [[n, k]] code (binary sectors use base 2 and the
// half-length exponent (n + k) / 2).
inline BoundReport check_bounds(const Trellis& t, std::size_t n, std::size_t k, TrellisKind kind) {
  BoundReport r;
  const double nk = static_cast<double>(n + k);
  const auto report = complexity(t);
  const double V = static_cast<double>(report.num_vertices);
  const double E = static_cast<double>(report.num_edges);
  bool per_level = true, per_level_tight = true;
  double worst = 0;
  for (std::size_t l = 0; l < t.level_sizes.size(); ++l) {
    const double e = std::min<double>(static_cast<double>(l), nk - static_cast<double>(l));
    const double cap = std::pow(kind == TrellisKind::quaternary ? 4.0 : 2.0, e);
    per_level = per_level && t.level_sizes[l] <= cap;
    per_level_tight = per_level_tight && t.level_sizes[l] == cap;
    worst = std::max(worst, static_cast<double>(t.level_sizes[l]) / cap);
  }
  BoundCheck profile{"state_profile", worst, 1.0, per_level, per_level_tight};
  if (kind == TrellisKind::quaternary) {
    double max_state = 0;
    for (auto s : t.level_sizes) max_state = std::max(max_state, static_cast<double>(s));
    r.checks.push_back(detail::bound_check("max_state_count", max_state, std::pow(2.0, nk)));
    r.checks.push_back(profile);
    const double a = std::pow(2.0, nk), b = std::pow(2.0, 2.0 * static_cast<double>(k));
    r.checks.push_back(detail::bound_check("vertices", V, (5 * a - b - 1) / 3));
    r.checks.push_back(detail::bound_check("edges", E, 4 * (2 * a - b - 1) / 3));
    r.checks.push_back(detail::bound_check("viterbi_cost", 2 * E - V, (11 * a - 7 * b - 7) / 3));
  } else {
    r.checks.push_back(profile);
    const double a = std::pow(2.0, nk / 2), b = std::pow(2.0, static_cast<double>(k));
    r.checks.push_back(detail::bound_check("vertices", V, 3 * a - b - 1));
    r.checks.push_back(detail::bound_check("edges", E, 2 * (2 * a - b - 1)));
    r.checks.push_back(detail::bound_check("viterbi_cost", 2 * E - V, 5 * a - 3 * b - 3));
  }
  return r;
}

}  // namespace qtrellis
