#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "puiseux/errors.hpp"

namespace puiseux {

using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// Exact rational in canonical form: den >= 1 and gcd(|num|, den) == 1,
/// with zero stored as 0/1. The library's domain is the nonnegative
/// rationals (see make_rational), but intermediate arithmetic is allowed
/// to dip negative (search residuals, comparisons).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int n) : num_(n), den_(1) {}  // NOLINT: implicit for literals
  Rational(Int n) : num_(std::move(n)), den_(1) {}
  Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  const Int& numerator() const { return num_; }
  const Int& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(-num_, den_, NoReduce{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero rational");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  /// Canonical "num/den" form, denominator included even when it is 1.
  std::string str_canonical() const {
    return num_.str() + "/" + den_.str();
  }

  /// Pretty form: "8/5" but plain "2" for integers.
  std::string str() const {
    return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
  }

  /// Parses "a" or "a/b". Whitespace is not accepted.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(parse_int(text), Int(1));
    }
    Int n = parse_int(text.substr(0, slash));
    Int d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::domain_error("rational with zero denominator");
    return Rational(n, d);
  }

 private:
  struct NoReduce {};
  Rational(Int n, Int d, NoReduce) : num_(std::move(n)), den_(std::move(d)) {}

  static Int parse_int(std::string_view text) {
    if (text.empty()) throw std::domain_error("empty number");
    std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size()) throw std::domain_error("bad number: " + std::string(text));
    for (std::size_t i = start; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') {
        throw std::domain_error("bad number: " + std::string(text));
      }
    }
    return Int(std::string(text));
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Int g = gcd(num_ < 0 ? Int(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_;
  Int den_;
};

/// Spec-facing constructor for the nonnegative domain: requires n >= 0 and
/// d > 0, returns the reduced rational.
inline Rational make_rational(const Int& n, const Int& d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (n < 0 || d < 0) throw std::domain_error("negative rational not in domain");
  return Rational(n, d);
}

/// floor(x / a) for a > 0. Handy as a multiplicity bound.
inline Int floor_div(const Rational& x, const Rational& a) {
  if (!a.is_positive()) throw std::domain_error("floor_div by nonpositive");
  // x/a = (x.num * a.den) / (x.den * a.num); floor for nonnegative x.
  Int num = x.numerator() * a.denominator();
  Int den = x.denominator() * a.numerator();
  if (num < 0) throw std::domain_error("floor_div of negative");
  return num / den;
}

// ---------------------------------------------------------------------------
// Extended valuations
// ---------------------------------------------------------------------------

/// An integer extended with +infinity; the value of v_p(0). Kept as a
/// distinct state rather than a sentinel so arithmetic cannot corrupt it.
class ExtValuation {
 public:
  static ExtValuation finite(Int v) { return ExtValuation(std::move(v), false); }
  static ExtValuation infinity() { return ExtValuation(Int(0), true); }

  bool is_infinite() const { return infinite_; }
  const Int& value() const {
    if (infinite_) throw std::logic_error("value() of infinite valuation");
    return value_;
  }

  friend ExtValuation operator+(const ExtValuation& a, const ExtValuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ + b.value_);
  }

  friend bool operator==(const ExtValuation& a, const ExtValuation& b) {
    if (a.infinite_ != b.infinite_) return false;
    return a.infinite_ || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtValuation& a, const ExtValuation& b) {
    return !(a == b);
  }
  /// Total order with infinity as the maximum.
  friend bool operator<(const ExtValuation& a, const ExtValuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>=(const ExtValuation& a, const ExtValuation& b) {
    return !(a < b);
  }

  static ExtValuation min(const ExtValuation& a, const ExtValuation& b) {
    return a < b ? a : b;
  }

  std::string str() const { return infinite_ ? "inf" : value_.str(); }

 private:
  ExtValuation(Int v, bool inf) : value_(std::move(v)), infinite_(inf) {}
  Int value_;
  bool infinite_;
};

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

/// Ascending list of all primes in [2, bound] (sieve of Eratosthenes).
inline std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  if (bound < 2) throw std::domain_error("primes_up_to requires bound >= 2");
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) {
      composite[static_cast<std::size_t>(j)] = true;
    }
  }
  return primes;
}

namespace detail {

inline Int mod_pow(Int base, Int exp, const Int& mod) {
  Int result = 1;
  base %= mod;
  while (exp > 0) {
    if ((exp & 1) != 0) result = (result * base) % mod;
    base = (base * base) % mod;
    exp >>= 1;
  }
  return result;
}

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d,
                                 int r) {
  Int x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace detail

/// Deterministic primality test. For n < 3.317e24 the fixed Miller-Rabin
/// base set {2,...,37} is a proven deterministic test; for larger n the
/// test extends the base set to the first 30 primes, which has no known
/// counterexample but is not a proof of primality at that size.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const std::array<int, 30> kBases = {
      2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
      53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
  for (int p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // n odd and > 113 here; write n-1 = d * 2^r.
  Int d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  static const Int kProvenBound("3317044064679887385961981");
  std::size_t base_count = n < kProvenBound ? 12 : kBases.size();
  for (std::size_t i = 0; i < base_count; ++i) {
    if (detail::miller_rabin_witness(n, Int(kBases[i]), d, r)) return false;
  }
  return true;
}

/// p-adic multiplicity of p in n > 0.
inline Int multiplicity(const Int& p, Int n) {
  if (n <= 0) throw std::domain_error("multiplicity of nonpositive integer");
  Int count = 0;
  while (n % p == 0) {
    n /= p;
    ++count;
  }
  return count;
}

/// v_p(r) = v_p(n(r)) - v_p(d(r)); v_p(0) = infinity. p must be prime.
inline ExtValuation padic_valuation(const Int& p, const Rational& r) {
  if (!is_prime(p)) throw std::domain_error("padic_valuation: p not prime");
  if (r.is_zero()) return ExtValuation::infinity();
  if (r.is_negative()) {
    return ExtValuation::finite(multiplicity(p, -r.numerator()) -
                                multiplicity(p, r.denominator()));
  }
  return ExtValuation::finite(multiplicity(p, r.numerator()) -
                              multiplicity(p, r.denominator()));
}

/// True iff p divides the denominator of r, i.e. v_p(r) < 0. Does not
/// require a primality check, so it is safe in hot loops.
inline bool divides_denominator(const Int& p, const Rational& r) {
  return r.denominator() % p == 0;
}

/// Smallest prime p >= lower with predicate(p) true. Examines at most
/// `search_cap` primes before throwing ResourceError. The smallest-such
/// rule keeps every construction in this library reproducible.
inline Int next_prime_satisfying(
    const Int& lower, const std::function<bool(const Int&)>& predicate,
    std::int64_t search_cap = 2'000'000) {
  Int candidate = lower < 2 ? Int(2) : lower;
  if (candidate > 2 && (candidate & 1) == 0) ++candidate;
  std::int64_t examined = 0;
  while (true) {
    if (is_prime(candidate)) {
      if (++examined > search_cap) {
        throw ResourceError("next_prime_satisfying: prime search cap exceeded",
                            search_cap);
      }
      if (predicate(candidate)) return candidate;
    }
    candidate += (candidate == 2) ? 1 : 2;
  }
}

}  // namespace puiseux
