#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "puiseux/arith.hpp"
#include "puiseux/caps.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/int_submonoid.hpp"

namespace puiseux::detail {

inline Int mod_inverse(const Int& a, const Int& m) {
  Int t = 0, newt = 1;
  Int r = m, newr = a % m;
  if (newr < 0) newr += m;
  while (newr != 0) {
    Int q = r / newr;
    Int tmp = t - q * newt;
    t = std::move(newt);
    newt = std::move(tmp);
    tmp = r - q * newr;
    r = std::move(newr);
    newr = std::move(tmp);
  }
  if (r != 1) throw std::logic_error("mod_inverse: arguments not coprime");
  if (t < 0) t += m;
  return t;
}

inline Int int_pow(const Int& base, const Int& exp) {
  Int result = 1;
  for (Int i = 0; i < exp; ++i) result *= base;
  return result;
}

/// Prime factors of n >= 1, ascending. Trial division by a small sieve,
/// then Pollard's rho (Brent variant, fixed parameter sequence) for any
/// remaining composite cofactor.
inline std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  if (n <= 1) return out;
  static const std::vector<std::int64_t> small = primes_up_to(100000);
  for (std::int64_t p : small) {
    if (Int(p) * p > n) break;
    if (n % p == 0) {
      out.push_back(Int(p));
      while (n % p == 0) n /= p;
    }
  }
  // Remaining cofactors split recursively via rho.
  auto rho = [](const Int& m) -> Int {
    for (Int c = 1;; ++c) {
      Int x = 2, y = 2, d = 1;
      while (d == 1) {
        x = (x * x + c) % m;
        y = (y * y + c) % m;
        y = (y * y + c) % m;
        Int diff = x > y ? x - y : y - x;
        d = gcd(diff, m);
      }
      if (d != m) return d;
    }
  };
  std::vector<Int> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    Int m = stack.back();
    stack.pop_back();
    if (is_prime(m)) {
      out.push_back(m);
      continue;
    }
    Int d = rho(m);
    Int q = m / d;
    while (q % d == 0) q /= d;
    stack.push_back(d);
    if (q > 1) stack.push_back(q);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Exact factorization-length and factorization-set queries over a finite
/// list of positive rational atoms.
///
/// The search peels off one "denominator prime" at a time: for a prime q
/// dividing some remaining atom denominators, the multiplicities of those
/// atoms are constrained by the requirement that the q-adic valuation of
/// the unmatched residual stays nonnegative (no other remaining atom can
/// cancel a q in a denominator). Within a group, the last multiplicity is
/// solved as a congruence mod q^k rather than enumerated, so large primes
/// cost nothing. What remains after all denominator primes are processed
/// is a plain integer knapsack, handled by the bounded DP.
class RationalLengthSolver {
 public:
  RationalLengthSolver(std::vector<Rational> atoms,
                       const Caps& caps = default_caps())
      : atoms_(std::move(atoms)), caps_(caps) {
    if (atoms_.size() > 63) {
      throw ResourceError("length solver: more than 63 atoms", 63);
    }
    std::set<Int> primes;
    for (const Rational& a : atoms_) {
      if (!a.is_positive()) {
        throw std::domain_error("length solver: atoms must be positive");
      }
      for (const Int& p : prime_factors(a.denominator())) primes.insert(p);
    }
    denom_primes_.assign(primes.begin(), primes.end());
  }

  const std::vector<Rational>& atoms() const { return atoms_; }

  /// L(x) over the atom list. Empty when x is not representable.
  LengthSet length_set(const Rational& x) {
    if (x.is_negative()) return LengthSet{};
    const std::set<Int>& res = solve(full_mask(), x);
    LengthSet out;
    out.values.assign(res.begin(), res.end());
    return out;
  }

  bool is_member(const Rational& x) { return !length_set(x).empty(); }

  /// Z(x): all exponent vectors over the atom list, ascending lex order.
  std::vector<FactorizationVector> factorizations(const Rational& x) {
    std::vector<FactorizationVector> out;
    if (x.is_negative()) return out;
    std::vector<Int> current(atoms_.size(), Int(0));
    enumerate(full_mask(), x, current, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  using Mask = std::uint64_t;

  Mask full_mask() const {
    return atoms_.empty() ? 0 : (Mask(1) << atoms_.size()) - 1;
  }

  void bump_nodes() {
    if (++nodes_ > caps_.solver_node_cap) {
      throw ResourceError("length solver: node cap exceeded",
                          caps_.solver_node_cap);
    }
  }

  // Drops atoms larger than the residual; canonicalizes memo keys.
  Mask reachable_mask(Mask mask, const Rational& r) const {
    Mask m = mask;
    for (Mask bits = mask; bits; bits &= bits - 1) {
      std::size_t i = static_cast<std::size_t>(std::countr_zero(bits));
      if (atoms_[i] > r) m &= ~(Mask(1) << i);
    }
    return m;
  }

  // True iff the residual's denominator only involves primes that some
  // masked atom can still cancel.
  bool denominator_coverable(Mask mask, const Rational& r) const {
    Int d = r.denominator();
    if (d == 1) return true;
    for (const Int& q : denom_primes_) {
      if (d % q != 0) continue;
      bool covered = false;
      for (Mask bits = mask; bits; bits &= bits - 1) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(bits));
        if (divides_denominator(q, atoms_[i])) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
      while (d % q == 0) d /= q;
    }
    return d == 1;
  }

  // Pivot prime for the next group, chosen to minimize estimated
  // branching: the product of multiplicity bounds over the group's atoms,
  // with the last atom counted modulo q^k (its multiplicity is solved as
  // a congruence, so only every q^k-th value is a candidate). Groups made
  // cheap by a restrictive congruence or by large atoms come first; by
  // the time a prime shared across many atoms is reached, other groups
  // have usually consumed most of them. Returns 0 when no masked atom
  // has a denominator (integer base case).
  Int pick_pivot(Mask mask, const Rational& r) const {
    static const Int kSaturate = Int(1) << 62;
    Int best_q = 0;
    Int best_cost = 0;
    for (const Int& q : denom_primes_) {
      std::vector<std::size_t> group;
      for (Mask bits = mask; bits; bits &= bits - 1) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(bits));
        if (divides_denominator(q, atoms_[i])) group.push_back(i);
      }
      if (group.empty()) continue;
      std::size_t smallest = group.front();
      for (std::size_t i : group) {
        if (atoms_[i] < atoms_[smallest]) smallest = i;
      }
      Int cost = 1;
      for (std::size_t i : group) {
        if (i == smallest) continue;
        cost *= floor_div(r, atoms_[i]) + 1;
        if (cost > kSaturate) {
          cost = kSaturate;
          break;
        }
      }
      if (cost < kSaturate) {
        Int modulus = int_pow(q, multiplicity(q, atoms_[smallest].denominator()));
        cost *= floor_div(r, Rational(modulus) * atoms_[smallest]) + 1;
        if (cost > kSaturate) cost = kSaturate;
      }
      if (best_q == 0 || cost < best_cost ||
          (cost == best_cost && q > best_q)) {
        best_q = q;
        best_cost = cost;
      }
    }
    return best_q;
  }

  // Multiplicities c >= 0 of atom a with c*a <= rem and
  // v_q(rem - c*a) >= 0, ascending. Solved as a congruence mod q^k.
  std::vector<Int> congruence_candidates(const Rational& rem,
                                         const Rational& a,
                                         const Int& q) const {
    Int k = multiplicity(q, a.denominator());
    Int j = rem.denominator() % q == 0 ? multiplicity(q, rem.denominator())
                                       : Int(0);
    if (j > k) return {};
    Int modulus = int_pow(q, k);
    Rational scaled_atom = a * Rational(modulus);
    Rational scaled_rem = rem * Rational(modulus);
    Int a_star = (scaled_atom.numerator() % modulus) *
                 mod_inverse(scaled_atom.denominator() % modulus, modulus) %
                 modulus;
    Int r_star = (scaled_rem.numerator() % modulus) *
                 mod_inverse(scaled_rem.denominator() % modulus, modulus) %
                 modulus;
    Int c = r_star * mod_inverse(a_star, modulus) % modulus;
    std::vector<Int> out;
    while (Rational(c) * a <= rem) {
      out.push_back(c);
      c += modulus;
    }
    return out;
  }

  const std::set<Int>& solve(Mask mask, const Rational& r) {
    bump_nodes();
    static const std::set<Int> kEmpty;
    static const std::set<Int> kZero = {Int(0)};
    if (r.is_zero()) return kZero;
    Mask m = reachable_mask(mask, r);
    if (m == 0) return kEmpty;
    if (!denominator_coverable(m, r)) return kEmpty;
    auto key = std::make_pair(m, r);
    auto found = memo_.find(key);
    if (found != memo_.end()) return found->second;

    std::set<Int> result;
    Int q = pick_pivot(m, r);
    if (q == 0) {
      result = integer_case(m, r);
    } else {
      std::vector<std::size_t> group;
      for (Mask bits = m; bits; bits &= bits - 1) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(bits));
        if (divides_denominator(q, atoms_[i])) group.push_back(i);
      }
      std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
        return atoms_[a] > atoms_[b];
      });
      Mask rest = m;
      for (std::size_t i : group) rest &= ~(Mask(1) << i);
      group_dfs(group, 0, rest, r, Int(0), q, result);
    }
    auto inserted = memo_.emplace(std::move(key), std::move(result));
    return inserted.first->second;
  }

  void group_dfs(const std::vector<std::size_t>& group, std::size_t pos,
                 Mask rest, const Rational& rem, const Int& len_so_far,
                 const Int& q, std::set<Int>& result) {
    bump_nodes();
    if (pos + 1 == group.size()) {
      for (const Int& c : congruence_candidates(rem, atoms_[group[pos]], q)) {
        Rational next = rem - Rational(c) * atoms_[group[pos]];
        const std::set<Int>& sub = solve(rest, next);
        for (const Int& l : sub) result.insert(len_so_far + c + l);
      }
      return;
    }
    const Rational& a = atoms_[group[pos]];
    for (Int c = 0; Rational(c) * a <= rem; ++c) {
      group_dfs(group, pos + 1, rest, rem - Rational(c) * a, len_so_far + c, q,
                result);
    }
  }

  std::set<Int> integer_case(Mask mask, const Rational& r) {
    // All masked atoms are integers here and d(r) == 1.
    std::vector<Int> values;
    for (Mask bits = mask; bits; bits &= bits - 1) {
      std::size_t i = static_cast<std::size_t>(std::countr_zero(bits));
      values.push_back(atoms_[i].numerator());
    }
    std::sort(values.begin(), values.end());
    IntSubmonoid monoid{std::move(values)};
    LengthSet ls = puiseux::length_set(monoid, r.numerator(), caps_);
    return std::set<Int>(ls.values.begin(), ls.values.end());
  }

  // Factorization enumeration: same peeling, but records full exponent
  // tuples instead of memoized length sets.
  void enumerate(Mask mask, const Rational& r, std::vector<Int>& current,
                 std::vector<FactorizationVector>& out) {
    bump_nodes();
    Mask m = reachable_mask(mask, r);
    if (r.is_zero()) {
      emit(current, out);
      return;
    }
    if (m == 0 || !denominator_coverable(m, r)) return;
    Int q = pick_pivot(m, r);
    if (q == 0) {
      enumerate_integer(m, r, current, out);
      return;
    }
    std::vector<std::size_t> group;
    for (Mask bits = m; bits; bits &= bits - 1) {
      std::size_t i = static_cast<std::size_t>(std::countr_zero(bits));
      if (divides_denominator(q, atoms_[i])) group.push_back(i);
    }
    std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
      return atoms_[a] > atoms_[b];
    });
    Mask rest = m;
    for (std::size_t i : group) rest &= ~(Mask(1) << i);
    enumerate_group(group, 0, rest, r, q, current, out);
  }

  void enumerate_group(const std::vector<std::size_t>& group, std::size_t pos,
                       Mask rest, const Rational& rem, const Int& q,
                       std::vector<Int>& current,
                       std::vector<FactorizationVector>& out) {
    bump_nodes();
    if (pos + 1 == group.size()) {
      for (const Int& c : congruence_candidates(rem, atoms_[group[pos]], q)) {
        current[group[pos]] = c;
        enumerate(rest, rem - Rational(c) * atoms_[group[pos]], current, out);
      }
      current[group[pos]] = 0;
      return;
    }
    const Rational& a = atoms_[group[pos]];
    for (Int c = 0; Rational(c) * a <= rem; ++c) {
      current[group[pos]] = c;
      enumerate_group(group, pos + 1, rest, rem - Rational(c) * a, q, current,
                      out);
    }
    current[group[pos]] = 0;
  }

  void enumerate_integer(Mask mask, const Rational& r,
                         std::vector<Int>& current,
                         std::vector<FactorizationVector>& out) {
    std::vector<std::size_t> indices;
    for (Mask bits = mask; bits; bits &= bits - 1) {
      indices.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
    }
    std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
      return atoms_[a] < atoms_[b];
    });
    IntSubmonoid monoid;
    for (std::size_t i : indices) monoid.atoms.push_back(atoms_[i].numerator());
    for (const FactorizationVector& z :
         puiseux::factorizations(monoid, r.numerator(), caps_)) {
      for (std::size_t pos = 0; pos < indices.size(); ++pos) {
        current[indices[pos]] = z.exponents[pos];
      }
      emit(current, out);
      for (std::size_t i : indices) current[i] = 0;
    }
  }

  void emit(const std::vector<Int>& current,
            std::vector<FactorizationVector>& out) {
    if (static_cast<std::int64_t>(out.size()) >= caps_.factorization_cap) {
      throw ResourceError("factorizations: cardinality cap exceeded",
                          caps_.factorization_cap);
    }
    out.push_back(FactorizationVector{current});
  }

  std::vector<Rational> atoms_;
  std::vector<Int> denom_primes_;
  Caps caps_;
  std::int64_t nodes_ = 0;
  std::map<std::pair<Mask, Rational>, std::set<Int>> memo_;
};

}  // namespace puiseux::detail
