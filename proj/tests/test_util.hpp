#pragma once

#include <random>
#include <vector>

#include "qtrellis/code.hpp"
#include "qtrellis/gf2.hpp"

namespace qtrellis::test_support {

// Random stabilizer code on n qubits with n - k commuting independent
// generators, grown greedily from random Pauli vectors.
inline StabilizerCode random_code(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  for (;;) {
    PauliMatrix gens;
    gf2::Basis basis(2 * n);
    for (int attempt = 0; attempt < 400 && gens.size() < n - k; ++attempt) {
      const PauliVector g(n, rng(), rng());
      if (g.is_identity()) continue;
      bool ok = true;
      for (const auto& h : gens) ok = ok && !star(g, h);
      if (!ok || basis.contains(gf2::to_row(g))) continue;
      basis.insert(gf2::to_row(g));
      gens.push_back(g);
    }
    if (gens.size() == n - k) return StabilizerCode(gens);
  }
}

inline StabilizerCode random_code(std::mt19937_64& rng, std::size_t max_n) {
  const std::size_t n = 1 + rng() % max_n;
  const std::size_t k = rng() % n;
  return random_code(rng, n, k);
}

}  // namespace qtrellis::test_support
