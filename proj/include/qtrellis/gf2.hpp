#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qtrellis/pauli.hpp"

namespace qtrellis::gf2 {

// Dense row of up to 128 bits. Pauli vectors map to [x | z] of width 2n.
struct BitRow {
  std::array<std::uint64_t, 2> w{0, 0};

  bool test(std::size_t i) const noexcept { return ((w[i >> 6] >> (i & 63)) & 1u) != 0; }
  void flip(std::size_t i) noexcept { w[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void set(std::size_t i) noexcept { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool none() const noexcept { return (w[0] | w[1]) == 0; }
  BitRow& operator^=(const BitRow& o) noexcept {
    w[0] ^= o.w[0];
    w[1] ^= o.w[1];
    return *this;
  }
  friend BitRow operator^(BitRow a, const BitRow& b) noexcept { return a ^= b; }
  friend bool operator==(const BitRow&, const BitRow&) = default;

  bool dot(const BitRow& o) const noexcept {
    return ((std::popcount(w[0] & o.w[0]) + std::popcount(w[1] & o.w[1])) & 1) != 0;
  }

  // Lowest set index, or -1.
  int lowest() const noexcept {
    if (w[0] != 0) return std::countr_zero(w[0]);
    if (w[1] != 0) return 64 + std::countr_zero(w[1]);
    return -1;
  }
};

inline BitRow from_bits(std::uint64_t bits) { return BitRow{{bits, 0}}; }

// Symplectic form [x | z].
inline BitRow to_row(const PauliVector& p) {
  const std::size_t n = p.size();
  BitRow r;
  r.w[0] = p.x_mask();
  if (n == 64) {
    r.w[1] = p.z_mask();
  } else {
    r.w[0] |= p.z_mask() << n;
    if (n > 0) r.w[1] = p.z_mask() >> (64 - n);
  }
  return r;
}

inline PauliVector from_row(const BitRow& r, std::size_t n) {
  std::uint64_t x = 0, z = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (r.test(i)) x |= std::uint64_t{1} << i;
    if (r.test(n + i)) z |= std::uint64_t{1} << i;
  }
  return {n, x, z};
}

// Row r' such that dot(r', to_row(v)) == star(p, v).
inline BitRow to_dual_row(const PauliVector& p) {
  return to_row(PauliVector(p.size(), p.z_mask(), p.x_mask()));
}

// Incrementally maintained echelon basis with coefficient tracking: every
// stored row remembers which inserted vectors it combines.
class Basis {
 public:
  explicit Basis(std::size_t width) : width_(width) {
    if (width > 128) throw std::invalid_argument("gf2 basis width exceeds 128");
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t inserted() const noexcept { return inserted_; }

  // Returns true if v was independent of the vectors inserted so far.
  bool insert(const BitRow& v) {
    const std::size_t index = inserted_++;
    auto [rem, combo] = reduce(v);
    if (rem.none()) return false;
    combo.flip_index(index);
    const int p = rem.lowest();
    rows_.push_back({rem, std::move(combo), static_cast<std::size_t>(p)});
    return true;
  }

  bool contains(const BitRow& v) const { return reduce(v).first.none(); }

  // Coefficients over the inserted vectors expressing v, if v is in the span.
  std::optional<std::vector<bool>> express(const BitRow& v) const {
    auto [rem, combo] = reduce(v);
    if (!rem.none()) return std::nullopt;
    std::vector<bool> out(inserted_, false);
    for (std::size_t i = 0; i < inserted_; ++i) out[i] = combo.test(i);
    return out;
  }

 private:
  struct Combo {
    std::vector<std::uint64_t> bits;
    void flip_index(std::size_t i) {
      if (bits.size() <= (i >> 6)) bits.resize((i >> 6) + 1, 0);
      bits[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }
    bool test(std::size_t i) const {
      return (i >> 6) < bits.size() && ((bits[i >> 6] >> (i & 63)) & 1u) != 0;
    }
    Combo& operator^=(const Combo& o) {
      if (bits.size() < o.bits.size()) bits.resize(o.bits.size(), 0);
      for (std::size_t i = 0; i < o.bits.size(); ++i) bits[i] ^= o.bits[i];
      return *this;
    }
  };
  struct Row {
    BitRow bits;
    Combo combo;
    std::size_t pivot;
  };

  std::pair<BitRow, Combo> reduce(BitRow v) const {
    Combo combo;
    for (const auto& row : rows_) {
      if (v.test(row.pivot)) {
        v ^= row.bits;
        combo ^= row.combo;
      }
    }
    return {v, combo};
  }

  std::size_t width_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
};

inline std::size_t rank(const std::vector<BitRow>& rows, std::size_t width) {
  Basis b(width);
  for (const auto& r : rows) b.insert(r);
  return b.rank();
}

// Basis of {x : dot(row, x) = 0 for every row}, x of the given width.
inline std::vector<BitRow> nullspace(std::vector<BitRow> rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && !rows[sel].test(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].test(col)) rows[i] ^= rows[r];
    pivots.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(width, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<BitRow> basis;
  for (std::size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    BitRow v;
    v.set(free);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (rows[i].test(free)) v.set(pivots[i]);
    basis.push_back(v);
  }
  return basis;
}

// Some x with dot(rows[i], x) = rhs[i] for all i, or nullopt if inconsistent.
inline std::optional<BitRow> solve(std::vector<BitRow> rows, std::vector<bool> rhs, std::size_t width) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("gf2::solve: rhs size mismatch");
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && !rows[sel].test(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    std::swap(rhs[r], rhs[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].test(col)) {
        rows[i] ^= rows[r];
        rhs[i] = rhs[i] != rhs[r];
      }
    }
    pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rhs[i]) return std::nullopt;
  BitRow x;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (rhs[i]) x.set(pivots[i]);
  return x;
}

}  // namespace qtrellis::gf2
