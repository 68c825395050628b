#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qtrellis {

// Single-qubit Pauli in the effective (phase-free) group, stored as the
// symplectic bit pair x | (z << 1): I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr Pauli pauli_from_bits(bool x, bool z) noexcept {
  return static_cast<Pauli>(static_cast<unsigned>(x) | (static_cast<unsigned>(z) << 1));
}

constexpr bool x_bit(Pauli p) noexcept { return (static_cast<unsigned>(p) & 1u) != 0; }
constexpr bool z_bit(Pauli p) noexcept { return (static_cast<unsigned>(p) & 2u) != 0; }

constexpr Pauli pauli_mul(Pauli a, Pauli b) noexcept {
  return static_cast<Pauli>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}

constexpr Pauli operator*(Pauli a, Pauli b) noexcept { return pauli_mul(a, b); }

// 1 iff a and b anticommute.
constexpr bool star(Pauli a, Pauli b) noexcept {
  return ((x_bit(a) && z_bit(b)) != (z_bit(a) && x_bit(b)));
}

// Presentation order I < X < Y < Z used for canonical forms and tie-breaking.
constexpr int pauli_rank(Pauli p) noexcept {
  constexpr std::array<int, 4> rank{0, 1, 3, 2};
  return rank[static_cast<unsigned>(p)];
}

constexpr char to_char(Pauli p) noexcept {
  constexpr std::array<char, 4> symbols{'I', 'X', 'Z', 'Y'};
  return symbols[static_cast<unsigned>(p)];
}

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("invalid Pauli symbol '") + c + "'");
  }
}

inline constexpr std::array<Pauli, 4> kAllPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

inline constexpr std::size_t kMaxQubits = 64;

// Element of the effective n-qubit Pauli group, packed as two bit masks.
class PauliVector {
 public:
  PauliVector() = default;

  explicit PauliVector(std::size_t n) : n_(n) {
    if (n > kMaxQubits) throw std::invalid_argument("PauliVector supports at most 64 qubits");
  }

  PauliVector(std::size_t n, std::uint64_t x, std::uint64_t z) : PauliVector(n) {
    const std::uint64_t m = mask();
    x_ = x & m;
    z_ = z & m;
  }

  static PauliVector parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty Pauli string");
    PauliVector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) v.set(i, pauli_from_char(text[i]));
    return v;
  }

  static PauliVector identity(std::size_t n) { return PauliVector(n); }

  // X^alpha or Z^beta for a packed binary vector.
  static PauliVector x_type(std::size_t n, std::uint64_t bits) { return {n, bits, 0}; }
  static PauliVector z_type(std::size_t n, std::uint64_t bits) { return {n, 0, bits}; }

  std::size_t size() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  Pauli operator[](std::size_t i) const noexcept {
    return pauli_from_bits(((x_ >> i) & 1u) != 0, ((z_ >> i) & 1u) != 0);
  }

  void set(std::size_t i, Pauli p) {
    if (i >= n_) throw std::out_of_range("Pauli index out of range");
    const std::uint64_t bit = std::uint64_t{1} << i;
    x_ = x_bit(p) ? (x_ | bit) : (x_ & ~bit);
    z_ = z_bit(p) ? (z_ | bit) : (z_ & ~bit);
  }

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  std::uint64_t support() const noexcept { return x_ | z_; }
  int weight() const noexcept { return std::popcount(support()); }

  // 0-based first and last non-identity positions; -1 for the identity.
  int left_index() const noexcept {
    return is_identity() ? -1 : std::countr_zero(support());
  }
  int right_index() const noexcept {
    return is_identity() ? -1 : 63 - std::countl_zero(support());
  }
  int span_length() const noexcept {
    return is_identity() ? 0 : right_index() - left_index() + 1;
  }

  PauliVector& operator*=(const PauliVector& o) {
    check_same_size(o);
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
  }

  friend PauliVector operator*(PauliVector a, const PauliVector& b) { return a *= b; }

  friend bool operator==(const PauliVector&, const PauliVector&) = default;

  // Lexicographic in positional symbol rank, then by size.
  friend bool operator<(const PauliVector& a, const PauliVector& b) {
    const std::size_t n = std::min(a.n_, b.n_);
    for (std::size_t i = 0; i < n; ++i) {
      const int ra = pauli_rank(a[i]), rb = pauli_rank(b[i]);
      if (ra != rb) return ra < rb;
    }
    return a.n_ < b.n_;
  }

  std::string to_string() const {
    std::string s(n_, 'I');
    for (std::size_t i = 0; i < n_; ++i) s[i] = to_char((*this)[i]);
    return s;
  }

  void check_same_size(const PauliVector& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Pauli vector length mismatch");
  }

 private:
  std::uint64_t mask() const noexcept {
    return n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

// Symplectic inner product: 0 iff a and b commute.
inline bool star(const PauliVector& a, const PauliVector& b) {
  a.check_same_size(b);
  return (std::popcount((a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask())) & 1) != 0;
}

// Binary vector of length at most 64; entry 0 is the first (most significant
// in text form) position.
class BinaryVector {
 public:
  BinaryVector() = default;
  explicit BinaryVector(std::size_t size, std::uint64_t bits = 0) : size_(size) {
    if (size > 64) throw std::invalid_argument("BinaryVector supports at most 64 entries");
    bits_ = bits & mask();
  }

  static BinaryVector parse(std::string_view text) {
    BinaryVector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') v.set(i, true);
      else if (text[i] != '0') throw std::invalid_argument("invalid bit character in '" + std::string(text) + "'");
    }
    return v;
  }

  static BinaryVector from_bits(std::initializer_list<int> bits) {
    BinaryVector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
  }

  std::size_t size() const noexcept { return size_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool operator[](std::size_t i) const noexcept { return ((bits_ >> i) & 1u) != 0; }
  void set(std::size_t i, bool value) {
    if (i >= size_) throw std::out_of_range("bit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << i;
    bits_ = value ? (bits_ | bit) : (bits_ & ~bit);
  }
  bool is_zero() const noexcept { return bits_ == 0; }

  BinaryVector& operator^=(const BinaryVector& o) {
    if (size_ != o.size_) throw std::invalid_argument("binary vector length mismatch");
    bits_ ^= o.bits_;
    return *this;
  }
  friend BinaryVector operator^(BinaryVector a, const BinaryVector& b) { return a ^= b; }
  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) if ((*this)[i]) s[i] = '1';
    return s;
  }

 private:
  std::uint64_t mask() const noexcept {
    return size_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size_) - 1);
  }

  std::size_t size_ = 0;
  std::uint64_t bits_ = 0;
};

using PauliMatrix = std::vector<PauliVector>;

inline BinaryVector syndrome(const PauliVector& e, const PauliMatrix& checks) {
  BinaryVector s(checks.size());
  for (std::size_t i = 0; i < checks.size(); ++i) s.set(i, star(checks[i], e));
  return s;
}

// Syndrome of e restricted to its first t positions (0 <= t <= n).
inline BinaryVector partial_syndrome(const PauliVector& e, const PauliMatrix& checks, std::size_t t) {
  if (t > e.size()) throw std::out_of_range("partial syndrome depth out of range");
  const std::uint64_t keep = t == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << t) - 1);
  const PauliVector prefix(e.size(), e.x_mask() & keep, e.z_mask() & keep);
  return syndrome(prefix, checks);
}

inline std::size_t matrix_width(const PauliMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t n = m.front().size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("Pauli matrix rows differ in length");
  return n;
}

}  // namespace qtrellis
