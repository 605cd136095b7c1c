#pragma once

// Test-only oracles, deliberately independent of the library's solver
// paths: plain bounded DFS over generator lists and trial-division
// primality. Exponential, fine at test scale.

#include <set>
#include <vector>

#include "puiseux/arith.hpp"
#include "puiseux/int_submonoid.hpp"

namespace oracles {

using puiseux::Int;
using puiseux::LengthSet;
using puiseux::Rational;

inline void brute_collect(const std::vector<Rational>& atoms, std::size_t idx,
                          const Rational& remaining, const Int& count,
                          std::vector<Int>& exponents,
                          std::set<Int>& lengths,
                          std::set<std::vector<Int>>* vectors) {
  if (remaining.is_zero()) {
    lengths.insert(count);
    if (vectors) vectors->insert(exponents);
    return;
  }
  if (idx == atoms.size()) return;
  for (Int c = 0; Rational(c) * atoms[idx] <= remaining; ++c) {
    exponents[idx] = c;
    brute_collect(atoms, idx + 1, remaining - Rational(c) * atoms[idx],
                  count + c, exponents, lengths, vectors);
  }
  exponents[idx] = 0;
}

inline LengthSet brute_length_set(const std::vector<Rational>& atoms,
                                  const Rational& x) {
  std::set<Int> lengths;
  std::vector<Int> exponents(atoms.size(), Int(0));
  brute_collect(atoms, 0, x, Int(0), exponents, lengths, nullptr);
  return LengthSet(std::vector<Int>(lengths.begin(), lengths.end()));
}

inline std::set<std::vector<Int>> brute_factorizations(
    const std::vector<Rational>& atoms, const Rational& x) {
  std::set<Int> lengths;
  std::set<std::vector<Int>> vectors;
  std::vector<Int> exponents(atoms.size(), Int(0));
  brute_collect(atoms, 0, x, Int(0), exponents, lengths, &vectors);
  return vectors;
}

inline bool trial_division_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace oracles
