#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qtrellis/channel.hpp"
#include "qtrellis/code.hpp"
#include "qtrellis/pauli.hpp"

// Exhaustive reference decoders. Depends only on pauli, code and channel.
namespace qtrellis::oracle {

class oracle_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxGenerators = 22;

// All distinct products of the generators, in order of first appearance along
// a Gray-code walk over generator subsets.
inline std::vector<PauliVector> enumerate_group(const PauliMatrix& gens, std::size_t n = 0) {
  if (gens.size() > kMaxGenerators)
    throw oracle_error("enumeration capped at " + std::to_string(kMaxGenerators) + " generators, got " +
                       std::to_string(gens.size()));
  if (!gens.empty()) n = matrix_width(gens);
  struct Hash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
  };
  std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, Hash> seen;
  std::vector<PauliVector> out;
  const std::uint64_t count = std::uint64_t{1} << gens.size();
  PauliVector w(n);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (i > 0) w *= gens[static_cast<std::size_t>(std::countr_zero(i))];
    if (seen.insert({w.x_mask(), w.z_mask()}).second) out.push_back(w);
  }
  return out;
}

inline long double word_prob(const PauliVector& e, const ChannelModel& ch) {
  long double p = 1;
  for (std::size_t i = 0; i < e.size(); ++i) p *= static_cast<long double>(ch(e[i]));
  return p;
}

// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0, comp_ = 0;
};

inline void check_size(std::size_t gens) {
  if (gens > kMaxGenerators)
    throw oracle_error("code too large for exhaustive search (" + std::to_string(gens) + " generators, cap " +
                       std::to_string(kMaxGenerators) + ")");
}

struct NdmlAnswer {
  PauliVector error;
  double prob = 0;
};

// Most probable element of rho N; ties go to the smallest word in symbol order.
inline NdmlAnswer brute_ndml(const StabilizerCode& code, const BinaryVector& sigma, const ChannelModel& ch) {
  check_size(code.n() + code.k());
  const PauliVector rho = code.representative(sigma);
  NdmlAnswer best{rho, -1};
  long double best_p = -1;
  for (const auto& w : enumerate_group(code.norm_gens())) {
    const PauliVector e = rho * w;
    const long double p = word_prob(e, ch);
    if (p > best_p || (p == best_p && e < best.error)) {
      best_p = p;
      best.error = e;
    }
  }
  best.prob = static_cast<double>(best_p);
  return best;
}

// Pr(rho l S') for every coset label l of a joint code, by enumerating the
// subcode once per label.
inline std::vector<double> brute_coset_probs(const JointCode& jc, const PauliVector& rho, const ChannelModel& ch) {
  check_size(jc.subcode.size() + jc.logicals.size());
  const auto sub = enumerate_group(jc.subcode, jc.n);
  const std::size_t m = std::size_t{1} << jc.logicals.size();
  std::vector<double> out(m);
  for (std::size_t label = 0; label < m; ++label) {
    const PauliVector shift = rho * jc.logical_from_label(label);
    CompensatedSum s;
    for (const auto& w : sub) s.add(word_prob(shift * w, ch));
    out[label] = static_cast<double>(s.value());
  }
  return out;
}

// Coset probabilities of rho N over the cosets of S, indexed by logical label.
inline std::vector<double> brute_dml(const StabilizerCode& code, const BinaryVector& sigma, const ChannelModel& ch) {
  check_size(code.n() + code.k());
  return brute_coset_probs(JointCode::cosets_of_stabilizer(code), code.representative(sigma), ch);
}

// Pr(rho N), summed over the whole normalizer coset.
inline double brute_total(const StabilizerCode& code, const BinaryVector& sigma, const ChannelModel& ch) {
  check_size(code.n() + code.k());
  const PauliVector rho = code.representative(sigma);
  CompensatedSum s;
  for (const auto& w : enumerate_group(code.norm_gens())) s.add(word_prob(rho * w, ch));
  return static_cast<double>(s.value());
}

// Lowest-weight element of rho N (ties by symbol order).
inline PauliVector brute_min_weight(const StabilizerCode& code, const BinaryVector& sigma) {
  check_size(code.n() + code.k());
  const PauliVector rho = code.representative(sigma);
  PauliVector best = rho;
  for (const auto& w : enumerate_group(code.norm_gens())) {
    const PauliVector e = rho * w;
    if (e.weight() < best.weight() || (e.weight() == best.weight() && e < best)) best = e;
  }
  return best;
}

}  // namespace qtrellis::oracle
