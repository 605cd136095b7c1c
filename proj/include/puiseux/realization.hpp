#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "puiseux/arith.hpp"
#include "puiseux/caps.hpp"
#include "puiseux/int_submonoid.hpp"

namespace puiseux {

/// Box for the bounded realization search.
struct SearchBounds {
  int max_atoms = 4;
  std::int64_t max_atom_value = 40;
  std::int64_t max_element = 400;

  std::string describe() const {
    return "max_atoms=" + std::to_string(max_atoms) +
           ", max_atom_value=" + std::to_string(max_atom_value) +
           ", max_element=" + std::to_string(max_element);
  }
};

struct RealizationResult {
  IntSubmonoid monoid;
  Int element;
  LengthSet verified_set;
};

/// Search outcome; an empty result is an explicit not-found carrying the
/// bounds that were exhausted.
struct RealizeOutcome {
  std::optional<RealizationResult> result;
  SearchBounds bounds_searched;
};

/// Recomputes the length set from scratch and compares.
inline bool verify_realization(const RealizationResult& r, const LengthSet& s,
                               const Caps& caps = default_caps()) {
  return length_set(r.monoid, r.element, caps) == s;
}

namespace detail {

// Per-monoid table mapping each value v <= max_element to the bitset of
// factorization lengths of v; word-parallel unbounded-knapsack sweep.
class LengthTable {
 public:
  LengthTable(const std::vector<std::int64_t>& atoms, std::int64_t max_element)
      : max_element_(max_element),
        words_(static_cast<std::size_t>(max_element / atoms.front() / 64 + 1)),
        rows_(static_cast<std::size_t>(max_element + 1),
              std::vector<std::uint64_t>(words_, 0)) {
    rows_[0][0] = 1;
    for (std::int64_t v = 1; v <= max_element; ++v) {
      auto& row = rows_[static_cast<std::size_t>(v)];
      for (std::int64_t a : atoms) {
        if (a > v) break;
        const auto& prev = rows_[static_cast<std::size_t>(v - a)];
        std::uint64_t carry = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          std::uint64_t shifted = (prev[w] << 1) | carry;
          carry = prev[w] >> 63;
          row[w] |= shifted;
        }
      }
    }
  }

  bool row_equals(std::int64_t v, const std::vector<std::uint64_t>& target) const {
    const auto& row = rows_[static_cast<std::size_t>(v)];
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t t = w < target.size() ? target[w] : 0;
      if (row[w] != t) return false;
    }
    for (std::size_t w = words_; w < target.size(); ++w) {
      if (target[w] != 0) return false;
    }
    return true;
  }

 private:
  std::int64_t max_element_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

inline bool tuple_is_minimal(const std::vector<std::int64_t>& atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::vector<Int> others;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (j != i) others.push_back(Int(atoms[j]));
    }
    if (others.empty()) continue;
    auto table = membership_table(others, atoms[i]);
    if (table[static_cast<std::size_t>(atoms[i])]) return false;
  }
  return true;
}

}  // namespace detail

/// Finds (N, x) with L_N(x) = S by deterministic exhaustive search:
/// atom count ascending, then atom tuples in lexicographic order, then
/// element ascending; the first hit wins and is re-verified before
/// return. Singletons {m} take the fast path (<1>, m), which is also
/// what the search order would produce.
inline RealizeOutcome realize(const LengthSet& s,
                              const SearchBounds& bounds = SearchBounds{},
                              const Caps& caps = default_caps()) {
  if (s.empty()) throw std::domain_error("realize: set must be nonempty");
  for (const Int& v : s.values) {
    if (v < 2) throw std::domain_error("realize: set members must be >= 2");
  }
  RealizeOutcome outcome;
  outcome.bounds_searched = bounds;

  auto finish = [&](IntSubmonoid monoid, Int element) {
    RealizationResult r;
    r.monoid = std::move(monoid);
    r.element = std::move(element);
    r.verified_set = length_set(r.monoid, r.element, caps);
    if (r.verified_set != s) {
      throw std::logic_error("realize: candidate failed re-verification");
    }
    outcome.result = std::move(r);
  };

  if (s.size() == 1) {
    finish(IntSubmonoid{{Int(1)}}, s.values.front());
    return outcome;
  }

  // Target lengths as a bitset; lengths above max_element/1 can never be
  // reached inside the bounds, so such sets simply exhaust the search.
  std::int64_t max_target = static_cast<std::int64_t>(s.values.back());
  if (max_target > bounds.max_element) return outcome;
  std::vector<std::uint64_t> target(
      static_cast<std::size_t>(max_target / 64 + 1), 0);
  for (const Int& v : s.values) {
    std::int64_t l = static_cast<std::int64_t>(v);
    target[static_cast<std::size_t>(l / 64)] |= std::uint64_t(1) << (l % 64);
  }

  std::vector<std::int64_t> tuple;
  auto search_tuples = [&](auto&& self, std::int64_t min_value,
                           int remaining) -> bool {
    if (remaining == 0) {
      if (!detail::tuple_is_minimal(tuple)) return false;
      detail::LengthTable table(tuple, bounds.max_element);
      for (std::int64_t x = 0; x <= bounds.max_element; ++x) {
        if (table.row_equals(x, target)) {
          IntSubmonoid monoid;
          for (std::int64_t a : tuple) monoid.atoms.push_back(Int(a));
          finish(std::move(monoid), Int(x));
          return true;
        }
      }
      return false;
    }
    for (std::int64_t a = min_value; a <= bounds.max_atom_value; ++a) {
      tuple.push_back(a);
      if (self(self, a + 1, remaining - 1)) return true;
      tuple.pop_back();
    }
    return false;
  };

  for (int k = 1; k <= bounds.max_atoms; ++k) {
    tuple.clear();
    if (search_tuples(search_tuples, 1, k)) return outcome;
  }
  return outcome;
}

}  // namespace puiseux
