#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qtrellis/pauli.hpp"

namespace qtrellis {

// Memoryless single-qubit channel: probability of each Pauli symbol, indexed
// by the symbol's bit encoding.
struct ChannelModel {
  double p = 0;
  std::array<double, 4> prob{1, 0, 0, 0};

  double operator()(Pauli a) const noexcept { return prob[static_cast<unsigned>(a)]; }
  double log_prob(Pauli a) const noexcept { return std::log(prob[static_cast<unsigned>(a)]); }

  // Pr(I) = 1 - p, Pr(X) = Pr(Y) = Pr(Z) = p / 3.
  static ChannelModel depolarizing(double p) {
    check_p(p);
    return {p, {1 - p, p / 3, p / 3, p / 3}};
  }

  // Table over the full alphabet; entries must be positive and sum to 1.
  static ChannelModel from_probs(const std::array<double, 4>& probs) {
    double total = 0;
    for (double q : probs) {
      if (!(q > 0)) throw std::invalid_argument("channel probabilities must be positive");
      total += q;
    }
    if (std::abs(total - 1) > 1e-12) throw std::invalid_argument("channel probabilities must sum to 1");
    return {1 - probs[0], probs};
  }

  static void check_p(double p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("depolarizing parameter must lie in (0, 1), got " + std::to_string(p));
  }
};

// Per-symbol model used by the separate CSS decoder on a pure alphabet.
enum class CssMarginal {
  independent,  // non-identity weight p/3, as if X and Z errors were independent
  exact,        // true marginal of the depolarizing channel, Pr(X or Y) = 2p/3
};

inline ChannelModel css_sector_channel(double p, CssMarginal m) {
  ChannelModel::check_p(p);
  if (m == CssMarginal::independent) return ChannelModel::depolarizing(p);
  const double q = 2 * p / 3;
  // Only I and one non-identity symbol occur on a sector alphabet.
  return {p, {1 - q, q, q, q}};
}

inline std::string to_string(CssMarginal m) { return m == CssMarginal::exact ? "exact" : "independent"; }

inline CssMarginal parse_css_marginal(const std::string& s) {
  if (s == "independent") return CssMarginal::independent;
  if (s == "exact") return CssMarginal::exact;
  throw std::invalid_argument("unknown CSS marginal model '" + s + "'");
}

}  // namespace qtrellis
