#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "puiseux/arith.hpp"
#include "puiseux/caps.hpp"
#include "puiseux/errors.hpp"

namespace puiseux {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Exponent vector over an indexed atom list. length() is the coordinate
/// sum |z|; value() is the represented element.
struct FactorizationVector {
  std::vector<Int> exponents;

  Int length() const {
    Int sum = 0;
    for (const Int& e : exponents) sum += e;
    return sum;
  }

  Int value(const std::vector<Int>& atoms) const {
    Int sum = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      sum += exponents[i] * atoms[i];
    }
    return sum;
  }

  friend bool operator==(const FactorizationVector& a,
                         const FactorizationVector& b) {
    return a.exponents == b.exponents;
  }
  friend bool operator<(const FactorizationVector& a,
                        const FactorizationVector& b) {
    return a.exponents < b.exponents;
  }
};

/// Strictly ascending, deduplicated set of factorization lengths.
struct LengthSet {
  std::vector<Int> values;

  LengthSet() = default;
  explicit LengthSet(std::vector<Int> v) : values(std::move(v)) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }

  bool empty() const { return values.empty(); }
  std::size_t size() const { return values.size(); }
  bool contains(const Int& v) const {
    return std::binary_search(values.begin(), values.end(), v);
  }
  void insert(const Int& v) {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) values.insert(it, v);
  }
  void merge(const LengthSet& other) {
    for (const Int& v : other.values) insert(v);
  }

  /// Setwise sum {a + b : a in this, b in other}.
  LengthSet setwise_add(const LengthSet& other) const {
    LengthSet out;
    for (const Int& a : values) {
      for (const Int& b : other.values) out.insert(a + b);
    }
    return out;
  }

  /// Elements of this set lying in [lo, hi].
  LengthSet window(const Int& lo, const Int& hi) const {
    LengthSet out;
    for (const Int& v : values) {
      if (v >= lo && v <= hi) out.values.push_back(v);
    }
    return out;
  }

  friend bool operator==(const LengthSet& a, const LengthSet& b) {
    return a.values == b.values;
  }
  friend bool operator!=(const LengthSet& a, const LengthSet& b) {
    return !(a == b);
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ", ";
      out += values[i].str();
    }
    return out + "}";
  }
};

/// Finitely generated additive submonoid of the nonnegative integers,
/// stored by its minimal generating set in ascending order. gcd of the
/// atoms may exceed 1; cofiniteness is never assumed.
struct IntSubmonoid {
  std::vector<Int> atoms;

  const Int& min_atom() const { return atoms.front(); }
  const Int& max_atom() const { return atoms.back(); }
};

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

namespace detail {

/// Boolean reachability table for values 0..bound over the given atoms.
inline std::vector<bool> membership_table(const std::vector<Int>& atoms,
                                          std::int64_t bound) {
  std::vector<bool> reach(static_cast<std::size_t>(bound) + 1, false);
  reach[0] = true;
  for (std::int64_t v = 1; v <= bound; ++v) {
    for (const Int& a : atoms) {
      if (a > v) break;  // atoms ascending
      std::int64_t av = static_cast<std::int64_t>(a);
      if (reach[static_cast<std::size_t>(v - av)]) {
        reach[static_cast<std::size_t>(v)] = true;
        break;
      }
    }
  }
  return reach;
}

}  // namespace detail

/// True iff n is a nonnegative integer combination of the atoms.
inline bool is_member(const IntSubmonoid& monoid, const Int& n,
                      const Caps& caps = default_caps()) {
  if (n < 0) return false;
  if (n == 0) return true;
  if (monoid.atoms.size() == 1) return n % monoid.atoms[0] == 0;
  Int g = 0;
  for (const Int& a : monoid.atoms) g = gcd(g, a);
  if (n % g != 0) return false;
  if (n > caps.membership_value_cap) {
    throw ResourceError("is_member: value exceeds membership DP cap",
                        caps.membership_value_cap);
  }
  std::int64_t bound = static_cast<std::int64_t>(n);
  return detail::membership_table(monoid.atoms, bound)[static_cast<std::size_t>(bound)];
}

// ---------------------------------------------------------------------------
// Minimal generating sets
// ---------------------------------------------------------------------------

/// Reduces a generating list to the minimal generating set of its span.
/// Generators are deduplicated and sorted; a generator is dropped exactly
/// when it is representable by the smaller kept ones (any representation
/// of g by other elements only involves values < g, so the ascending
/// sweep is exact).
inline IntSubmonoid minimalize(const std::vector<Int>& gens,
                               const Caps& caps = default_caps()) {
  if (gens.empty()) throw std::domain_error("minimalize: empty generator list");
  std::vector<Int> sorted = gens;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() <= 0) {
    throw std::domain_error("minimalize: generators must be positive");
  }
  IntSubmonoid result;
  for (const Int& g : sorted) {
    if (result.atoms.empty() || !is_member(result, g, caps)) {
      result.atoms.push_back(g);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Factorizations and length sets
// ---------------------------------------------------------------------------

/// Complete set of exponent vectors with value n, ascending lexicographic.
/// Z(0) = {0}; empty iff n is not a member. Throws ResourceError when the
/// set would exceed caps.factorization_cap.
inline std::vector<FactorizationVector> factorizations(
    const IntSubmonoid& monoid, const Int& n,
    const Caps& caps = default_caps()) {
  std::vector<FactorizationVector> out;
  if (n < 0) return out;
  std::size_t k = monoid.atoms.size();
  std::vector<Int> current(k, Int(0));
  // DFS in index order emits vectors in ascending lex order directly.
  auto rec = [&](auto&& self, std::size_t idx, const Int& remaining) -> void {
    if (idx + 1 == k) {
      if (remaining % monoid.atoms[idx] == 0) {
        current[idx] = remaining / monoid.atoms[idx];
        if (static_cast<std::int64_t>(out.size()) >= caps.factorization_cap) {
          throw ResourceError("factorizations: cardinality cap exceeded",
                              caps.factorization_cap);
        }
        out.push_back(FactorizationVector{current});
        current[idx] = 0;
      }
      return;
    }
    Int max_count = remaining / monoid.atoms[idx];
    for (Int c = 0; c <= max_count; ++c) {
      current[idx] = c;
      self(self, idx + 1, remaining - c * monoid.atoms[idx]);
    }
    current[idx] = 0;
  };
  rec(rec, 0, n);
  return out;
}

/// L(n) = {|z| : z in Z(n)}, computed by a (value x length) boolean DP
/// bounded by floor(n / min atom) so it succeeds even when Z(n) itself
/// is astronomically large.
inline LengthSet length_set(const IntSubmonoid& monoid, const Int& n,
                            const Caps& caps = default_caps()) {
  LengthSet out;
  if (n < 0) return out;
  if (n == 0) {
    out.values.push_back(0);
    return out;
  }
  if (monoid.atoms.size() == 1) {
    if (n % monoid.atoms[0] == 0) out.values.push_back(n / monoid.atoms[0]);
    return out;
  }
  Int max_len_big = n / monoid.min_atom();
  Int cells = (n + 1) * (max_len_big + 1);
  if (cells > caps.dp_cell_cap) {
    throw ResourceError("length_set: DP table exceeds cell cap",
                        caps.dp_cell_cap);
  }
  std::int64_t value = static_cast<std::int64_t>(n);
  std::int64_t max_len = static_cast<std::int64_t>(max_len_big);
  std::size_t words = static_cast<std::size_t>(max_len / 64 + 1);
  // reach[v] is a bitset over lengths; bit l set means v is a sum of
  // exactly l atoms.
  std::vector<std::vector<std::uint64_t>> reach(
      static_cast<std::size_t>(value) + 1,
      std::vector<std::uint64_t>(words, 0));
  reach[0][0] = 1;
  for (std::int64_t v = 1; v <= value; ++v) {
    auto& row = reach[static_cast<std::size_t>(v)];
    for (const Int& a : monoid.atoms) {
      if (a > v) break;
      const auto& prev = reach[static_cast<std::size_t>(v - static_cast<std::int64_t>(a))];
      // row |= prev << 1
      std::uint64_t carry = 0;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t shifted = (prev[w] << 1) | carry;
        carry = prev[w] >> 63;
        row[w] |= shifted;
      }
    }
  }
  const auto& final_row = reach[static_cast<std::size_t>(value)];
  for (std::int64_t l = 0; l <= max_len; ++l) {
    if (final_row[static_cast<std::size_t>(l / 64)] >> (l % 64) & 1) {
      out.values.push_back(Int(l));
    }
  }
  return out;
}

}  // namespace puiseux
