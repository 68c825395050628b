#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qtrellis/channel.hpp"
#include "qtrellis/code.hpp"
#include "qtrellis/gf2.hpp"
#include "qtrellis/trellis.hpp"

namespace qtrellis {

class decode_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DecodeMode { ndml, dml, css };

inline std::string to_string(DecodeMode m) {
  switch (m) {
    case DecodeMode::ndml: return "ndml";
    case DecodeMode::dml: return "dml";
    case DecodeMode::css: return "css";
  }
  return "?";
}

inline DecodeMode parse_decode_mode(const std::string& s) {
  if (s == "ndml") return DecodeMode::ndml;
  if (s == "dml") return DecodeMode::dml;
  if (s == "css") return DecodeMode::css;
  throw decode_error("unknown decoder mode '" + s + "'");
}

// Arithmetic performed by one sum-product pass.
struct OpCounts {
  std::uint64_t multiplications = 0;
  std::uint64_t additions = 0;

  OpCounts& operator+=(const OpCounts& o) {
    multiplications += o.multiplications;
    additions += o.additions;
    return *this;
  }
};

struct DecodeResult {
  DecodeMode mode = DecodeMode::ndml;
  PauliVector error_estimate;
  // NDML: log probability of the estimate. DML/CSS: of the winning coset.
  double log_prob = 0;
  BinaryVector winning_logical;
  // Indexed by logical label (bit j of the index is entry j of the label).
  std::vector<double> coset_log_probs;
  OpCounts ops;
};

enum class TieBreak { canonical, random };

struct NdmlOptions {
  TieBreak tie = TieBreak::canonical;
  std::uint64_t seed = 0;
  // Relative tolerance under which two path costs count as tied.
  double tie_tolerance = 1e-12;
};

enum class Domain { log, linear };

namespace detail {

inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// weights[t][a] = log Pr(rho_t * a).
inline std::vector<std::array<double, 4>> section_log_weights(const PauliVector& rho, const ChannelModel& ch) {
  std::vector<std::array<double, 4>> w(rho.size());
  for (std::size_t t = 0; t < rho.size(); ++t)
    for (Pauli a : kAllPaulis) w[t][static_cast<unsigned>(a)] = ch.log_prob(rho[t] * a);
  return w;
}

inline std::vector<std::array<double, 4>> section_weights(const PauliVector& rho, const ChannelModel& ch) {
  std::vector<std::array<double, 4>> w(rho.size());
  for (std::size_t t = 0; t < rho.size(); ++t)
    for (Pauli a : kAllPaulis) w[t][static_cast<unsigned>(a)] = ch(rho[t] * a);
  return w;
}

inline void check_depth(const Trellis& t, const PauliVector& rho) {
  if (t.depth() != rho.size()) throw decode_error("trellis depth does not match the code length");
}

}  // namespace detail

// Vector of the joint code's alphabet with the given check syndrome.
inline PauliVector joint_representative(const JointCode& jc, const BinaryVector& sigma) {
  if (sigma.size() != jc.checks.size())
    throw decode_error("syndrome has " + std::to_string(sigma.size()) + " bits, expected " +
                       std::to_string(jc.checks.size()));
  std::vector<gf2::BitRow> rows;
  std::vector<bool> rhs;
  for (std::size_t i = 0; i < jc.checks.size(); ++i) {
    const auto& c = jc.checks[i];
    switch (jc.alphabet) {
      case JointCode::Alphabet::x_only: rows.push_back(gf2::from_bits(c.z_mask())); break;
      case JointCode::Alphabet::z_only: rows.push_back(gf2::from_bits(c.x_mask())); break;
      default: rows.push_back(gf2::to_dual_row(c)); break;
    }
    rhs.push_back(sigma[i]);
  }
  const std::size_t width = jc.alphabet == JointCode::Alphabet::pauli ? 2 * jc.n : jc.n;
  const auto sol = gf2::solve(rows, rhs, width);
  if (!sol) throw decode_error("syndrome is not attainable");
  switch (jc.alphabet) {
    case JointCode::Alphabet::x_only: return PauliVector::x_type(jc.n, sol->w[0]);
    case JointCode::Alphabet::z_only: return PauliVector::z_type(jc.n, sol->w[0]);
    default: return gf2::from_row(*sol, jc.n);
  }
}

// Most probable word rho * w over the paths w of t (min-sum Viterbi on the
// rho-relabeled trellis). Returns the word and its log probability.
inline std::pair<PauliVector, double> viterbi(const Trellis& t, const PauliVector& rho, const ChannelModel& ch,
                                               const NdmlOptions& opt = {}) {
  detail::check_depth(t, rho);
  const auto lw = detail::section_log_weights(rho, ch);
  const std::size_t n = t.depth();
  // cost[l][v]: minimum -log probability from v to any goal.
  std::vector<std::vector<double>> cost(n + 1);
  cost[n].assign(t.level_sizes[n], 0.0);
  for (std::size_t l = n; l-- > 0;) {
    cost[l].assign(t.level_sizes[l], std::numeric_limits<double>::infinity());
    for (const auto& e : t.sections[l]) {
      const double c = cost[l + 1][e.to] - lw[l][static_cast<unsigned>(e.label)];
      if (c < cost[l][e.from]) cost[l][e.from] = c;
    }
  }
  std::mt19937_64 rng(opt.seed);
  PauliVector w(n);
  std::uint32_t v = 0;
  std::vector<const Edge*> tied;
  for (std::size_t l = 0; l < n; ++l) {
    const auto offs = detail::out_offsets(t.sections[l], t.level_sizes[l]);
    const double best = cost[l][v];
    const double tol = opt.tie_tolerance * std::max(1.0, std::abs(best));
    tied.clear();
    for (auto i = offs[v]; i < offs[v + 1]; ++i) {
      const Edge& e = t.sections[l][i];
      if (cost[l + 1][e.to] - lw[l][static_cast<unsigned>(e.label)] <= best + tol) tied.push_back(&e);
    }
    if (tied.empty()) throw decode_error("trellis has a dead end");
    const Edge* pick = tied.front();
    for (const Edge* c : tied)
      if (pauli_rank(rho[l] * c->label) < pauli_rank(rho[l] * pick->label)) pick = c;
    if (opt.tie == TieBreak::random && tied.size() > 1) {
      std::uniform_int_distribution<std::size_t> d(0, tied.size() - 1);
      pick = tied[d(rng)];
    }
    w.set(l, pick->label);
    v = pick->to;
  }
  const PauliVector e = rho * w;
  double logp = 0;
  for (std::size_t i = 0; i < n; ++i) logp += ch.log_prob(e[i]);
  return {e, logp};
}

struct SumProductResult {
  // log of the summed path weight at each goal, indexed by goal label.
  std::vector<double> coset_log_probs;
  // rho * w for one path w ending at each goal, indexed by goal label.
  std::vector<PauliVector> members;
  OpCounts ops;
};

// Forward sum-product pass over the rho-relabeled trellis.
inline SumProductResult sum_product(const Trellis& t, const PauliVector& rho, const ChannelModel& ch,
                                    Domain domain = Domain::log) {
  detail::check_depth(t, rho);
  const std::size_t n = t.depth();
  const std::size_t goals = t.goal_count();
  if (t.goal_bits >= 32 || goals != (std::size_t{1} << t.goal_bits))
    throw decode_error("trellis lacks one goal per coset");
  const auto lw = domain == Domain::log ? detail::section_log_weights(rho, ch) : detail::section_weights(rho, ch);
  SumProductResult r;
  std::vector<double> alpha{domain == Domain::log ? 0.0 : 1.0};
  // First incoming edge of every vertex, for recovering one member per goal.
  std::vector<std::vector<const Edge*>> pred(n);
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<double> next(t.level_sizes[l + 1]);
    std::vector<bool> seen(t.level_sizes[l + 1], false);
    pred[l].assign(t.level_sizes[l + 1], nullptr);
    for (const auto& e : t.sections[l]) {
      const double wgt = lw[l][static_cast<unsigned>(e.label)];
      const double m = domain == Domain::log ? alpha[e.from] + wgt : alpha[e.from] * wgt;
      ++r.ops.multiplications;
      if (!seen[e.to]) {
        next[e.to] = m;
        seen[e.to] = true;
        pred[l][e.to] = &e;
      } else {
        next[e.to] = domain == Domain::log ? detail::log_add(next[e.to], m) : next[e.to] + m;
        ++r.ops.additions;
      }
    }
    alpha = std::move(next);
  }
  r.coset_log_probs.assign(goals, -std::numeric_limits<double>::infinity());
  r.members.assign(goals, PauliVector(n));
  for (std::size_t g = 0; g < goals; ++g) {
    const std::uint64_t label = t.goal_labels[g];
    r.coset_log_probs[label] = domain == Domain::log ? alpha[g] : std::log(alpha[g]);
    PauliVector w(n);
    std::uint32_t v = static_cast<std::uint32_t>(g);
    for (std::size_t l = n; l-- > 0;) {
      const Edge* e = pred[l][v];
      w.set(l, e->label);
      v = e->from;
    }
    r.members[label] = rho * w;
  }
  return r;
}

// Lowest label whose log value is within tol of the maximum.
inline std::size_t argmax_label(const std::vector<double>& v, double tol = 1e-12) {
  const double best = *std::max_element(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] >= best - tol * std::max(1.0, std::abs(best))) return i;
  return 0;
}

// NDML over the trellis of N (single goal) or of (N, S).
inline DecodeResult ndml_decode(const Trellis& t, const StabilizerCode& code, const BinaryVector& sigma,
                                const ChannelModel& ch, const NdmlOptions& opt = {}) {
  if (sigma.size() != code.stab_gens().size())
    throw decode_error("syndrome has " + std::to_string(sigma.size()) + " bits, expected " +
                       std::to_string(code.stab_gens().size()));
  auto [e, logp] = viterbi(t, code.representative(sigma), ch, opt);
  DecodeResult r;
  r.mode = DecodeMode::ndml;
  r.error_estimate = e;
  r.log_prob = logp;
  r.winning_logical = code.logical_label(e * code.representative(sigma));
  return r;
}

// DML over the multi-goal trellis of (N, S).
inline DecodeResult dml_decode(const Trellis& t, const StabilizerCode& code, const BinaryVector& sigma,
                               const ChannelModel& ch, Domain domain = Domain::log) {
  if (sigma.size() != code.stab_gens().size())
    throw decode_error("syndrome has " + std::to_string(sigma.size()) + " bits, expected " +
                       std::to_string(code.stab_gens().size()));
  if (t.goal_bits != 2 * code.k()) throw decode_error("trellis lacks per-coset goals");
  auto sp = sum_product(t, code.representative(sigma), ch, domain);
  const std::size_t best = argmax_label(sp.coset_log_probs);
  DecodeResult r;
  r.mode = DecodeMode::dml;
  r.error_estimate = sp.members[best];
  r.log_prob = sp.coset_log_probs[best];
  r.winning_logical = BinaryVector(2 * code.k(), best);
  r.coset_log_probs = std::move(sp.coset_log_probs);
  r.ops = sp.ops;
  return r;
}

// Separate CSS decoding: one sum-product pass per sector. tx presents the
// cosets of S_Z in N_Z (Z-type errors, X checks), tz those of S_X in N_X.
// The coset table holds the product of the two sector probabilities.
inline DecodeResult css_dml_decode(const Trellis& tx, const Trellis& tz, const CssCode& css,
                                   const BinaryVector& sigma_x, const BinaryVector& sigma_z,
                                   const ChannelModel& ch) {
  const JointCode jx = css.x_sector(), jz = css.z_sector();
  if (sigma_x.size() != jx.checks.size() || sigma_z.size() != jz.checks.size())
    throw decode_error("CSS syndrome length mismatch: expected " + std::to_string(jx.checks.size()) + "/" +
                       std::to_string(jz.checks.size()) + " bits");
  const std::size_t k = css.k();
  if (tx.goal_bits != k || tz.goal_bits != k) throw decode_error("sector trellis lacks per-coset goals");
  auto px = sum_product(tx, joint_representative(jx, sigma_x), ch);
  auto pz = sum_product(tz, joint_representative(jz, sigma_z), ch);
  const std::size_t bx = argmax_label(px.coset_log_probs), bz = argmax_label(pz.coset_log_probs);
  DecodeResult r;
  r.mode = DecodeMode::css;
  r.error_estimate = pz.members[bz] * px.members[bx];
  r.log_prob = px.coset_log_probs[bx] + pz.coset_log_probs[bz];
  r.winning_logical = css.join_label(bx, bz);
  r.coset_log_probs.assign(std::size_t{1} << (2 * k), 0.0);
  for (std::size_t lx = 0; lx < px.coset_log_probs.size(); ++lx)
    for (std::size_t lz = 0; lz < pz.coset_log_probs.size(); ++lz)
      r.coset_log_probs[css.join_label(lx, lz).bits()] = px.coset_log_probs[lx] + pz.coset_log_probs[lz];
  r.ops = px.ops;
  r.ops += pz.ops;
  return r;
}

}  // namespace qtrellis
