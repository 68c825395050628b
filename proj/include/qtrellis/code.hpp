#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtrellis/gf2.hpp"
#include "qtrellis/pauli.hpp"

namespace qtrellis {

class code_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_commuting(const PauliMatrix& rows, const char* what) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (star(rows[i], rows[j]))
        throw code_error(std::string(what) + ": rows " + std::to_string(i) + " and " +
                         std::to_string(j) + " anticommute");
}

inline void require_independent(const PauliMatrix& rows, std::size_t n, const char* what) {
  gf2::Basis basis(2 * n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!basis.insert(gf2::to_row(rows[i])))
      throw code_error(std::string(what) + ": row " + std::to_string(i) + " is dependent");
}

// Makes destabilizers commute with the logicals and with each other without
// changing their syndromes. Logicals come in anticommuting pairs (2i, 2i+1).
inline void normalize_destabilizers(PauliMatrix& destab, const PauliMatrix& stab,
                                    const PauliMatrix& logicals) {
  for (auto& t : destab)
    for (std::size_t j = 0; j < logicals.size(); ++j)
      if (star(t, logicals[j])) t *= logicals[j ^ 1];
  for (std::size_t i = 0; i < destab.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (star(destab[i], destab[j])) destab[i] *= stab[j];
}

}  // namespace detail

// [[n, k]] stabilizer code with derived normalizer, logical and destabilizer
// generators. Logical generators are paired: logical(2i) and logical(2i+1)
// anticommute and commute with every other generator.
class StabilizerCode {
 public:
  explicit StabilizerCode(PauliMatrix stab_gens) : stab_(std::move(stab_gens)) {
    if (stab_.empty()) throw code_error("stabilizer code needs at least one generator");
    n_ = matrix_width(stab_);
    detail::require_commuting(stab_, "stabilizer generators");
    detail::require_independent(stab_, n_, "stabilizer generators");
    if (stab_.size() > n_) throw code_error("more stabilizer generators than qubits");
    k_ = n_ - stab_.size();
    derive_logicals();
    derive_destabilizers();
  }

  // Code with caller-supplied paired logicals and destabilizers (validated).
  static StabilizerCode from_parts(PauliMatrix stab, PauliMatrix logicals, PauliMatrix destab) {
    StabilizerCode code;
    code.stab_ = std::move(stab);
    if (code.stab_.empty()) throw code_error("stabilizer code needs at least one generator");
    code.n_ = matrix_width(code.stab_);
    detail::require_commuting(code.stab_, "stabilizer generators");
    detail::require_independent(code.stab_, code.n_, "stabilizer generators");
    code.k_ = code.n_ - code.stab_.size();
    code.logical_ = std::move(logicals);
    code.destab_ = std::move(destab);
    if (code.logical_.size() != 2 * code.k_) throw code_error("expected 2k logical generators");
    if (code.destab_.size() != code.stab_.size()) throw code_error("expected n-k destabilizers");
    detail::normalize_destabilizers(code.destab_, code.stab_, code.logical_);
    code.validate();
    return code;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  const PauliMatrix& stab_gens() const noexcept { return stab_; }
  const PauliMatrix& logical_gens() const noexcept { return logical_; }
  const PauliMatrix& destabilizers() const noexcept { return destab_; }

  // G(N) = [G(S); G(L)], n + k rows.
  PauliMatrix norm_gens() const {
    PauliMatrix g = stab_;
    g.insert(g.end(), logical_.begin(), logical_.end());
    return g;
  }

  // Symplectic partner of each logical generator.
  PauliMatrix logical_partners() const {
    PauliMatrix p;
    for (std::size_t j = 0; j < logical_.size(); ++j) p.push_back(logical_[j ^ 1]);
    return p;
  }

  BinaryVector syndrome(const PauliVector& e) const {
    if (e.size() != n_) throw code_error("error length does not match code length");
    return qtrellis::syndrome(e, stab_);
  }

  bool in_normalizer(const PauliVector& e) const { return syndrome(e).is_zero(); }

  // Coordinates of w over the logical generators; meaningful for w in N.
  BinaryVector logical_label(const PauliVector& w) const {
    BinaryVector label(logical_.size());
    for (std::size_t j = 0; j < logical_.size(); ++j) label.set(j, star(w, logical_[j ^ 1]));
    return label;
  }

  PauliVector logical_from_label(const BinaryVector& label) const {
    if (label.size() != logical_.size()) throw code_error("logical label length mismatch");
    PauliVector w(n_);
    for (std::size_t j = 0; j < logical_.size(); ++j)
      if (label[j]) w *= logical_[j];
    return w;
  }

  // rho = prod t_i^{sigma_i}; syndrome(rho) == sigma.
  PauliVector representative(const BinaryVector& sigma) const {
    if (sigma.size() != stab_.size()) throw code_error("syndrome length must be n-k");
    PauliVector rho(n_);
    for (std::size_t i = 0; i < destab_.size(); ++i)
      if (sigma[i]) rho *= destab_[i];
    return rho;
  }

  bool in_stabilizer_group(const PauliVector& e) const {
    return syndrome(e).is_zero() && logical_label(e).is_zero();
  }

  // Same predicate by row reduction against G(S).
  bool in_stabilizer_span(const PauliVector& e) const {
    gf2::Basis basis(2 * n_);
    for (const auto& s : stab_) basis.insert(gf2::to_row(s));
    return basis.contains(gf2::to_row(e));
  }

 private:
  StabilizerCode() = default;

  void derive_logicals() {
    std::vector<gf2::BitRow> dual;
    for (const auto& s : stab_) dual.push_back(gf2::to_dual_row(s));
    const auto kernel = gf2::nullspace(dual, 2 * n_);
    gf2::Basis span(2 * n_);
    for (const auto& s : stab_) span.insert(gf2::to_row(s));
    PauliMatrix pool;
    for (const auto& v : kernel)
      if (span.insert(v)) pool.push_back(gf2::from_row(v, n_));
    if (pool.size() != 2 * k_) throw code_error("normalizer dimension mismatch");
    while (!pool.empty()) {
      const PauliVector a = pool.front();
      auto it = std::find_if(pool.begin() + 1, pool.end(), [&](const PauliVector& b) { return star(a, b); });
      if (it == pool.end()) throw code_error("degenerate symplectic complement");
      const PauliVector b = *it;
      pool.erase(it);
      pool.erase(pool.begin());
      for (auto& c : pool) {
        const bool ca = star(c, a), cb = star(c, b);
        if (cb) c *= a;
        if (ca) c *= b;
      }
      logical_.push_back(a);
      logical_.push_back(b);
    }
  }

  void derive_destabilizers() {
    std::vector<gf2::BitRow> dual;
    for (const auto& s : stab_) dual.push_back(gf2::to_dual_row(s));
    for (std::size_t i = 0; i < stab_.size(); ++i) {
      std::vector<bool> rhs(stab_.size(), false);
      rhs[i] = true;
      auto x = gf2::solve(dual, rhs, 2 * n_);
      if (!x) throw code_error("no destabilizer exists");
      destab_.push_back(gf2::from_row(*x, n_));
    }
    detail::normalize_destabilizers(destab_, stab_, logical_);
    validate();
  }

  void validate() const {
    for (const auto& l : logical_) {
      if (l.size() != n_) throw code_error("logical width mismatch");
      for (const auto& s : stab_)
        if (star(l, s)) throw code_error("logical generator anticommutes with a stabilizer");
    }
    for (std::size_t a = 0; a < logical_.size(); ++a)
      for (std::size_t b = 0; b < logical_.size(); ++b)
        if (star(logical_[a], logical_[b]) != (b == (a ^ 1)))
          throw code_error("logical generators are not symplectically paired");
    for (std::size_t i = 0; i < destab_.size(); ++i)
      for (std::size_t j = 0; j < stab_.size(); ++j)
        if (star(destab_[i], stab_[j]) != (i == j)) throw code_error("destabilizer pairing violated");
    gf2::Basis basis(2 * n_);
    for (const auto& v : stab_) basis.insert(gf2::to_row(v));
    for (const auto& v : logical_)
      if (!basis.insert(gf2::to_row(v))) throw code_error("logical generators are dependent on S");
  }

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  PauliMatrix stab_;
  PauliMatrix logical_;
  PauliMatrix destab_;
};

// Joint code (C, C'): the group code C = <subcode, logicals> restricted to an
// alphabet, partitioned into the cosets of C' = <subcode>. `checks` cut C out
// of the alphabet space; `partners` satisfy star(logicals[i], partners[j]) =
// delta_ij and commute with C', so a word's coset label is its syndrome
// against the partners.
struct JointCode {
  enum class Alphabet { pauli, x_only, z_only };

  std::size_t n = 0;
  Alphabet alphabet = Alphabet::pauli;
  PauliMatrix checks;
  PauliMatrix subcode;
  PauliMatrix logicals;
  PauliMatrix partners;

  std::size_t label_bits() const noexcept { return logicals.size(); }

  std::uint64_t label(const PauliVector& w) const {
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < partners.size(); ++j)
      if (star(w, partners[j])) bits |= std::uint64_t{1} << j;
    return bits;
  }

  PauliVector logical_from_label(std::uint64_t label) const {
    PauliVector w(n);
    for (std::size_t j = 0; j < logicals.size(); ++j)
      if ((label >> j) & 1u) w *= logicals[j];
    return w;
  }

  std::vector<Pauli> symbols() const {
    switch (alphabet) {
      case Alphabet::x_only: return {Pauli::I, Pauli::X};
      case Alphabet::z_only: return {Pauli::I, Pauli::Z};
      default: return {kAllPaulis.begin(), kAllPaulis.end()};
    }
  }

  // (N, S) of a stabilizer code: one goal per logical coset.
  static JointCode cosets_of_stabilizer(const StabilizerCode& code) {
    return {code.n(), Alphabet::pauli, code.stab_gens(), code.stab_gens(), code.logical_gens(),
            code.logical_partners()};
  }

  // N alone as a single-goal code.
  static JointCode normalizer(const StabilizerCode& code) {
    return {code.n(), Alphabet::pauli, code.stab_gens(), code.norm_gens(), {}, {}};
  }
};

// CSS code from parity-check matrices h1 (of C1) and h2 (of C2) with
// C2^perp contained in C1. Rows are packed bit masks of width n.
class CssCode {
 public:
  CssCode(std::size_t n, std::vector<std::uint64_t> h1, std::vector<std::uint64_t> h2)
      : n_(n), h1_(std::move(h1)), h2_(std::move(h2)) {
    if (n == 0 || n > kMaxQubits) throw code_error("CSS code length out of range");
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    for (auto r : h1_) if (r & ~mask) throw code_error("h1 row wider than n");
    for (auto r : h2_) if (r & ~mask) throw code_error("h2 row wider than n");
    if (h1_.empty() && h2_.empty()) throw code_error("CSS code needs at least one check row");
    for (auto a : h1_)
      for (auto b : h2_)
        if (std::popcount(a & b) & 1) throw code_error("containment C2^perp in C1 violated");

    for (auto r : h1_) sx_.push_back(PauliVector::x_type(n, r));
    for (auto r : h2_) sz_.push_back(PauliVector::z_type(n, r));
    detail::require_independent(sx_, n, "h1 rows");
    detail::require_independent(sz_, n, "h2 rows");

    const auto c1 = kernel(h1_), c2 = kernel(h2_);
    for (auto v : c2) nx_.push_back(PauliVector::x_type(n, v));
    for (auto v : c1) nz_.push_back(PauliVector::z_type(n, v));
    auto lx = complement(h1_, c2);
    auto lz = complement(h2_, c1);
    if (lx.size() != lz.size()) throw code_error("inconsistent CSS logical dimensions");
    pair_up(lx, lz);
    for (auto v : lx) lx_.push_back(PauliVector::x_type(n, v));
    for (auto v : lz) lz_.push_back(PauliVector::z_type(n, v));

    PauliMatrix stab = sx_;
    stab.insert(stab.end(), sz_.begin(), sz_.end());
    PauliMatrix logicals;
    for (std::size_t i = 0; i < lx_.size(); ++i) {
      logicals.push_back(lx_[i]);
      logicals.push_back(lz_[i]);
    }
    PauliMatrix destab;
    for (std::size_t i = 0; i < h1_.size(); ++i)
      destab.push_back(PauliVector::z_type(n, unit_solution(h1_, i)));
    for (std::size_t i = 0; i < h2_.size(); ++i)
      destab.push_back(PauliVector::x_type(n, unit_solution(h2_, i)));
    base_ = StabilizerCode::from_parts(std::move(stab), std::move(logicals), std::move(destab));
  }

  const StabilizerCode& base() const noexcept { return *base_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return lx_.size(); }
  std::size_t k1() const noexcept { return nz_.size(); }
  std::size_t k2() const noexcept { return nx_.size(); }
  const std::vector<std::uint64_t>& h1() const noexcept { return h1_; }
  const std::vector<std::uint64_t>& h2() const noexcept { return h2_; }
  const PauliMatrix& sx_gens() const noexcept { return sx_; }
  const PauliMatrix& sz_gens() const noexcept { return sz_; }
  const PauliMatrix& nx_gens() const noexcept { return nx_; }
  const PauliMatrix& nz_gens() const noexcept { return nz_; }
  const PauliMatrix& lx_gens() const noexcept { return lx_; }
  const PauliMatrix& lz_gens() const noexcept { return lz_; }

  // X-stabilizer sector: Z-type errors, syndrome from S_X, cosets of S_Z in N_Z.
  JointCode x_sector() const {
    return {n_, JointCode::Alphabet::z_only, sx_, sz_, lz_, lx_};
  }
  // Z-stabilizer sector: X-type errors, syndrome from S_Z, cosets of S_X in N_X.
  JointCode z_sector() const {
    return {n_, JointCode::Alphabet::x_only, sz_, sx_, lx_, lz_};
  }

  // Splits a full syndrome (S_X bits then S_Z bits) into its two parts.
  std::pair<BinaryVector, BinaryVector> split_syndrome(const BinaryVector& sigma) const {
    if (sigma.size() != sx_.size() + sz_.size()) throw code_error("syndrome length must be n-k");
    BinaryVector sx(sx_.size(), sigma.bits());
    BinaryVector sz(sz_.size(), sigma.bits() >> sx_.size());
    return {sx, sz};
  }

  BinaryVector join_syndrome(const BinaryVector& sigma_x, const BinaryVector& sigma_z) const {
    if (sigma_x.size() != sx_.size() || sigma_z.size() != sz_.size())
      throw code_error("CSS syndrome length mismatch");
    return BinaryVector(sx_.size() + sz_.size(), sigma_x.bits() | (sigma_z.bits() << sx_.size()));
  }

  // Full logical label from the X-sector (Z-part) and Z-sector (X-part) labels.
  BinaryVector join_label(std::uint64_t x_sector_label, std::uint64_t z_sector_label) const {
    BinaryVector label(2 * k());
    for (std::size_t i = 0; i < k(); ++i) {
      label.set(2 * i, (z_sector_label >> i) & 1u);
      label.set(2 * i + 1, (x_sector_label >> i) & 1u);
    }
    return label;
  }

 private:
  std::vector<std::uint64_t> kernel(const std::vector<std::uint64_t>& h) const {
    std::vector<gf2::BitRow> rows;
    for (auto r : h) rows.push_back(gf2::from_bits(r));
    std::vector<std::uint64_t> out;
    for (const auto& v : gf2::nullspace(rows, n_)) out.push_back(v.w[0]);
    return out;
  }

  // Vectors of `space` completing the row space of h.
  std::vector<std::uint64_t> complement(const std::vector<std::uint64_t>& h,
                                        const std::vector<std::uint64_t>& space) const {
    gf2::Basis basis(n_);
    for (auto r : h) basis.insert(gf2::from_bits(r));
    std::vector<std::uint64_t> out;
    for (auto v : space)
      if (basis.insert(gf2::from_bits(v))) out.push_back(v);
    return out;
  }

  static bool dot(std::uint64_t a, std::uint64_t b) { return (std::popcount(a & b) & 1) != 0; }

  // Brings (a_i, b_j) to dot(a_i, b_j) = delta_ij.
  static void pair_up(std::vector<std::uint64_t>& a, std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::size_t j = i;
      while (j < b.size() && !dot(a[i], b[j])) ++j;
      if (j == b.size()) throw code_error("CSS logical pairing is degenerate");
      std::swap(b[i], b[j]);
      for (std::size_t m = 0; m < b.size(); ++m)
        if (m != i && dot(a[i], b[m])) b[m] ^= b[i];
      for (std::size_t m = 0; m < a.size(); ++m)
        if (m != i && dot(a[m], b[i])) a[m] ^= a[i];
    }
  }

  std::uint64_t unit_solution(const std::vector<std::uint64_t>& h, std::size_t i) const {
    std::vector<gf2::BitRow> rows;
    for (auto r : h) rows.push_back(gf2::from_bits(r));
    std::vector<bool> rhs(h.size(), false);
    rhs[i] = true;
    auto x = gf2::solve(rows, rhs, n_);
    if (!x) throw code_error("check rows are dependent");
    return x->w[0];
  }

  std::size_t n_;
  std::vector<std::uint64_t> h1_, h2_;
  PauliMatrix sx_, sz_, nx_, nz_, lx_, lz_;
  std::optional<StabilizerCode> base_;
};

// ---------------------------------------------------------------------------
// Trellis-oriented form

inline bool rows_satisfy_lr(const PauliMatrix& g, bool left) {
  const std::size_t n = matrix_width(g);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Pauli> at;
    for (const auto& row : g) {
      if (row.is_identity()) continue;
      const int idx = left ? row.left_index() : row.right_index();
      if (idx == static_cast<int>(t)) at.push_back(row[t]);
    }
    if (at.size() > 2) return false;
    if (at.size() == 2 && at[0] == at[1]) return false;
  }
  return true;
}

inline bool has_l_property(const PauliMatrix& g) { return rows_satisfy_lr(g, true); }
inline bool has_r_property(const PauliMatrix& g) { return rows_satisfy_lr(g, false); }
inline bool is_tof(const PauliMatrix& g) { return has_l_property(g) && has_r_property(g); }

inline std::size_t total_span_length(const PauliMatrix& g) {
  std::size_t s = 0;
  for (const auto& row : g) s += static_cast<std::size_t>(row.span_length());
  return s;
}

namespace detail {

inline int edge_index(const PauliVector& row, bool left) {
  return left ? row.left_index() : row.right_index();
}

// One greedy replacement on the rows sharing a left (right) index. `mutable_row`
// says which rows may be replaced; among candidates the one with the longest
// span wins, ties to the lowest row index.
template <typename Mutable>
bool tof_step(PauliMatrix& g, bool left, Mutable mutable_row) {
  const int n = static_cast<int>(matrix_width(g));
  for (int step = 0; step < n; ++step) {
    const int t = left ? step : n - 1 - step;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!g[i].is_identity() && edge_index(g[i], left) == t) rows.push_back(i);
    if (rows.size() < 2) continue;

    auto pick = [&](std::initializer_list<std::size_t> cands) -> std::optional<std::size_t> {
      std::optional<std::size_t> best;
      for (auto c : cands) {
        if (!mutable_row(c)) continue;
        if (!best || g[c].span_length() > g[*best].span_length()) best = c;
      }
      return best;
    };

    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = a + 1; b < rows.size(); ++b) {
        const std::size_t i = rows[a], j = rows[b];
        if (g[i][t] != g[j][t]) continue;
        auto target = pick({i, j});
        if (!target) continue;
        PauliVector product = g[i] * g[j];
        if (product.is_identity()) throw code_error("matrix rows are linearly dependent");
        g[*target] = product;
        return true;
      }
    }
    if (rows.size() >= 3) {
      const std::size_t i = rows[0], j = rows[1], k = rows[2];
      auto target = pick({i, j, k});
      if (!target) continue;
      PauliVector product = g[i] * g[j] * g[k];
      if (product.is_identity()) throw code_error("matrix rows are linearly dependent");
      g[*target] = product;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Greedy conversion to trellis-oriented (LR) form. Row space is preserved and
// the total span length strictly decreases with every replacement.
inline PauliMatrix to_tof(PauliMatrix g) {
  if (g.empty()) return g;
  matrix_width(g);
  for (const auto& row : g)
    if (row.is_identity()) throw code_error("matrix rows are linearly dependent");
  auto any = [](std::size_t) { return true; };
  while (detail::tof_step(g, true, any) || detail::tof_step(g, false, any)) {
  }
  return g;
}

// [G(S); G(L)] with G(S) in TOF and the whole matrix having the L-property.
// Only logical rows are ever replaced, so the S block keeps its row space.
inline PauliMatrix to_restricted_tof(const PauliMatrix& gs, const PauliMatrix& gl) {
  PauliMatrix g = to_tof(gs);
  const std::size_t s_rows = g.size();
  g.insert(g.end(), gl.begin(), gl.end());
  if (gl.empty()) return g;
  matrix_width(g);
  for (const auto& row : gl)
    if (row.is_identity()) throw code_error("matrix rows are linearly dependent");
  auto logical_only = [s_rows](std::size_t i) { return i >= s_rows; };
  while (detail::tof_step(g, true, logical_only)) {
  }
  return g;
}

inline PauliMatrix to_restricted_tof(const StabilizerCode& code) {
  return to_restricted_tof(code.stab_gens(), code.logical_gens());
}

// G+ = [G(S) Q1; G(L) Q2]: identity tails on S rows, X at tail position i on
// logical row i.
inline PauliMatrix extend_joint(const PauliMatrix& gs, const PauliMatrix& gl) {
  std::size_t n = 0;
  if (!gs.empty()) n = matrix_width(gs);
  if (!gl.empty()) {
    const std::size_t nl = matrix_width(gl);
    if (!gs.empty() && nl != n) throw code_error("extend_joint: width mismatch");
    n = nl;
  }
  const std::size_t width = n + gl.size();
  if (width > kMaxQubits) throw code_error("extended code exceeds 64 positions");
  PauliMatrix out;
  for (const auto& row : gs) out.emplace_back(width, row.x_mask(), row.z_mask());
  for (std::size_t i = 0; i < gl.size(); ++i)
    out.emplace_back(width, gl[i].x_mask() | (std::uint64_t{1} << (n + i)), gl[i].z_mask());
  return out;
}

// ---------------------------------------------------------------------------
// Code definition files

struct LoadedCode {
  std::string name;
  StabilizerCode code;
  std::optional<CssCode> css;
};

namespace detail {

inline std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

inline std::uint64_t parse_binary_row(const std::string& s, std::size_t n) {
  if (s.size() != n) throw code_error("binary row '" + s + "' does not have length " + std::to_string(n));
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == '1') bits |= std::uint64_t{1} << i;
    else if (s[i] != '0') throw code_error("invalid character in binary row '" + s + "'");
  }
  return bits;
}

}  // namespace detail

// Format: header `n k` followed by n-k Pauli strings, or header `css n`
// followed by rows of h1, a `--` line, and rows of h2. `#` starts a comment.
inline LoadedCode parse_code_text(const std::string& text, std::string name = "") {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw code_error("empty code definition");
  std::istringstream header(lines[0]);
  std::string first;
  header >> first;
  if (first == "css") {
    std::size_t n = 0;
    if (!(header >> n) || n == 0) throw code_error("bad css header: '" + lines[0] + "'");
    std::vector<std::uint64_t> h1, h2;
    bool second = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i] == "--") {
        if (second) throw code_error("more than one '--' separator");
        second = true;
        continue;
      }
      (second ? h2 : h1).push_back(detail::parse_binary_row(lines[i], n));
    }
    if (!second) throw code_error("css definition lacks '--' separator");
    CssCode css(n, std::move(h1), std::move(h2));
    StabilizerCode base = css.base();
    return {std::move(name), std::move(base), std::move(css)};
  }
  std::size_t n = 0, k = 0;
  try {
    n = std::stoul(first);
  } catch (const std::exception&) {
    throw code_error("bad header: '" + lines[0] + "'");
  }
  if (!(header >> k) || k >= n) throw code_error("bad header: '" + lines[0] + "'");
  PauliMatrix rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != n) throw code_error("generator '" + lines[i] + "' does not have length " + std::to_string(n));
    try {
      rows.push_back(PauliVector::parse(lines[i]));
    } catch (const std::invalid_argument& e) {
      throw code_error(e.what());
    }
  }
  if (rows.size() != n - k) throw code_error("expected " + std::to_string(n - k) + " generators");
  return {std::move(name), StabilizerCode(std::move(rows)), std::nullopt};
}

inline LoadedCode load_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw code_error("cannot open code file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_code_text(buffer.str(), path);
}

}  // namespace qtrellis
