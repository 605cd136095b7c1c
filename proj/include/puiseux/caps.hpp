#pragma once

#include <cstdint>

namespace puiseux {

/// Resource caps shared across the library. Every algorithm that can blow
/// up (enumeration counts, DP table sizes, search depth) checks one of
/// these and throws ResourceError instead of running away. All defaults
/// are overridable from the CLI and via the PUISEUX_CAPS environment
/// variable.
struct Caps {
  /// Maximum number of factorization vectors materialized by Z(x) queries.
  std::int64_t factorization_cap = 1'000'000;
  /// Maximum value covered by boolean membership DP tables.
  std::int64_t membership_value_cap = 100'000'000;
  /// Maximum number of bits in a (value x length) DP table.
  std::int64_t dp_cell_cap = 400'000'000;
  /// Maximum primes examined by next_prime_satisfying.
  std::int64_t prime_search_cap = 2'000'000;
  /// Maximum search nodes visited by the rational length-set solver.
  std::int64_t solver_node_cap = 50'000'000;
  /// Maximum (composition x prime-tuple) combinations in the length formula.
  std::int64_t formula_tuple_cap = 100'000'000;
};

inline const Caps& default_caps() {
  static const Caps caps;
  return caps;
}

}  // namespace puiseux
