#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "puiseux/arith.hpp"
#include "puiseux/caps.hpp"
#include "puiseux/detail/length_solver.hpp"
#include "puiseux/int_submonoid.hpp"

namespace puiseux {

/// Ascending, deduplicated set of primes. Houses d_p(S) and the prime
/// pools used by the staged constructions.
struct PrimeSet {
  std::vector<Int> primes;

  bool contains(const Int& p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
  }
  void insert(const Int& p) {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p) primes.insert(it, p);
  }
  bool intersects(const PrimeSet& other) const {
    for (const Int& p : primes) {
      if (other.contains(p)) return true;
    }
    return false;
  }
  friend bool operator==(const PrimeSet& a, const PrimeSet& b) {
    return a.primes == b.primes;
  }
};

/// Finitely generated Puiseux monoid: minimal rational atoms in ascending
/// order, together with the canonical integer-scaled image
/// (scale_factor = gcd of atom numerators / lcm of atom denominators, so
/// integer_image.atoms[i] = atoms[i] / scale_factor).
struct FGPuiseux {
  std::vector<Rational> atoms;
  Rational scale_factor;
  IntSubmonoid integer_image;

  const Rational& min_atom() const { return atoms.front(); }
  const Rational& max_atom() const { return atoms.back(); }
};

namespace detail {

inline FGPuiseux attach_image(std::vector<Rational> atoms) {
  FGPuiseux m;
  m.atoms = std::move(atoms);
  Int num_gcd = 0;
  Int den_lcm = 1;
  for (const Rational& a : m.atoms) {
    num_gcd = gcd(num_gcd, a.numerator());
    den_lcm = lcm(den_lcm, a.denominator());
  }
  m.scale_factor = Rational(num_gcd, den_lcm);
  for (const Rational& a : m.atoms) {
    Rational image = a / m.scale_factor;
    m.integer_image.atoms.push_back(image.numerator());
  }
  return m;
}

}  // namespace detail

/// Minimal generating set of the monoid generated by `gens`, computed on
/// the integer image via minimalize when the image is small enough for
/// the membership DP, and directly on the rationals (valuation-pruned
/// solver) otherwise. Both routes agree: scaling is an isomorphism.
inline FGPuiseux normalize(const std::vector<Rational>& gens,
                           const Caps& caps = default_caps()) {
  if (gens.empty()) throw std::domain_error("normalize: empty generator list");
  std::vector<Rational> sorted = gens;
  for (const Rational& g : sorted) {
    if (!g.is_positive()) {
      throw std::domain_error("normalize: generators must be positive");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  FGPuiseux span = detail::attach_image(sorted);
  if (span.integer_image.max_atom() <= caps.membership_value_cap) {
    IntSubmonoid minimal = minimalize(span.integer_image.atoms, caps);
    std::vector<Rational> atoms;
    atoms.reserve(minimal.atoms.size());
    for (const Int& a : minimal.atoms) {
      atoms.push_back(Rational(a) * span.scale_factor);
    }
    return detail::attach_image(std::move(atoms));
  }
  // Large image: ascending sweep with solver membership. Any representation
  // of g by other generators only involves values < g, so keeping exactly
  // the generators not representable by the smaller kept ones is exact.
  std::vector<Rational> kept;
  for (const Rational& g : sorted) {
    if (kept.empty()) {
      kept.push_back(g);
      continue;
    }
    detail::RationalLengthSolver solver(kept, caps);
    if (!solver.is_member(g)) kept.push_back(g);
  }
  return detail::attach_image(std::move(kept));
}

/// qM: atoms scaled pointwise by q > 0. Lengths transport unchanged:
/// length_set(M, x) == length_set(scale(M, q), q*x).
inline FGPuiseux scale(const FGPuiseux& m, const Rational& q) {
  if (!q.is_positive()) throw std::domain_error("scale: factor must be > 0");
  std::vector<Rational> atoms;
  atoms.reserve(m.atoms.size());
  for (const Rational& a : m.atoms) atoms.push_back(a * q);
  return detail::attach_image(std::move(atoms));
}

inline bool is_member(const FGPuiseux& m, const Rational& x,
                      const Caps& caps = default_caps()) {
  if (x.is_zero()) return true;
  if (x.is_negative()) return false;
  Rational image = x / m.scale_factor;
  if (!image.is_integer()) return false;
  if (image.numerator() <= caps.membership_value_cap) {
    return is_member(m.integer_image, image.numerator(), caps);
  }
  detail::RationalLengthSolver solver(m.atoms, caps);
  return solver.is_member(x);
}

/// Z(x) as exponent vectors parallel to m.atoms, ascending lex order.
inline std::vector<FactorizationVector> factorizations(
    const FGPuiseux& m, const Rational& x, const Caps& caps = default_caps()) {
  if (x.is_negative()) return {};
  Rational image = x / m.scale_factor;
  if (!x.is_zero() && !image.is_integer()) return {};
  if (x.is_zero() || image.numerator() <= caps.membership_value_cap) {
    Int value = x.is_zero() ? Int(0) : image.numerator();
    return factorizations(m.integer_image, value, caps);
  }
  detail::RationalLengthSolver solver(m.atoms, caps);
  return solver.factorizations(x);
}

/// L(x), transported from the integer image when it is small and computed
/// by the valuation-pruned solver otherwise.
inline LengthSet length_set(const FGPuiseux& m, const Rational& x,
                            const Caps& caps = default_caps()) {
  if (x.is_negative()) return LengthSet{};
  Rational image = x / m.scale_factor;
  if (!x.is_zero() && !image.is_integer()) return LengthSet{};
  if (x.is_zero() || image.numerator() <= caps.membership_value_cap) {
    Int value = x.is_zero() ? Int(0) : image.numerator();
    return length_set(m.integer_image, value, caps);
  }
  detail::RationalLengthSolver solver(m.atoms, caps);
  return solver.length_set(x);
}

/// d_p(S): exactly the primes dividing some denominator d(s), s in S.
inline PrimeSet denominator_primes(const std::vector<Rational>& elements) {
  PrimeSet out;
  for (const Rational& s : elements) {
    for (const Int& p : detail::prime_factors(s.denominator())) out.insert(p);
  }
  return out;
}

/// The factor r with M = r * M2 when the monoids are isomorphic, absent
/// otherwise. Positive scaling preserves the ascending atom order, so the
/// only candidate is the ratio of the minimum atoms.
inline std::optional<Rational> isomorphism_factor(const FGPuiseux& m,
                                                  const FGPuiseux& m2) {
  if (m.atoms.empty() || m2.atoms.empty()) {
    throw std::domain_error("isomorphism_factor: trivial monoid");
  }
  if (m.atoms.size() != m2.atoms.size()) return std::nullopt;
  Rational r = m.min_atom() / m2.min_atom();
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    if (m.atoms[i] != m2.atoms[i] * r) return std::nullopt;
  }
  return r;
}

/// Bounded denominators are automatic for a finite generator list; the
/// content of the boundedness criterion lives in the staged overload,
/// where it separates the finitely generated monoids from the rest.
inline bool is_bounded_denominators(const std::vector<Rational>& gens) {
  return !gens.empty();
}

enum class TriState { Yes, No, Unknown };

/// A (possibly infinite) generator stream with optional certificates:
/// a declared infimum of the nonzero elements and/or a declared positive
/// uniform lower bound. Only the metadata can decide the limit-point
/// question; probes merely cross-check it.
struct GeneratorStream {
  std::function<Rational(std::size_t)> at;
  std::optional<Rational> declared_infimum;
  std::optional<Rational> declared_lower_bound;
};

/// Whether 0 is a limit point of the generated monoid: Yes when the
/// stream certifies infimum 0, No when it certifies a positive uniform
/// lower bound, Unknown otherwise (the property is semidecidable).
inline TriState has_zero_limit_point(const GeneratorStream& stream,
                                     int probe_count) {
  if (probe_count < 1) {
    throw std::domain_error("has_zero_limit_point: probe_count must be >= 1");
  }
  for (int i = 0; i < probe_count; ++i) {
    Rational v = stream.at(static_cast<std::size_t>(i));
    if (stream.declared_lower_bound && v < *stream.declared_lower_bound) {
      throw std::logic_error("generator stream violates its declared bound");
    }
    if (stream.declared_infimum && v < *stream.declared_infimum) {
      throw std::logic_error("generator stream violates its declared infimum");
    }
  }
  if (stream.declared_infimum && stream.declared_infimum->is_zero()) {
    return TriState::Yes;
  }
  if (stream.declared_lower_bound &&
      stream.declared_lower_bound->is_positive()) {
    return TriState::No;
  }
  return TriState::Unknown;
}

}  // namespace puiseux
