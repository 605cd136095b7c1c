#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "puiseux/arith.hpp"
#include "support/oracles.hpp"

using namespace puiseux;

TEST_CASE("make_rational reduces to canonical form", "[arith]") {
  REQUIRE(make_rational(4, 6) == Rational(Int(2), Int(3)));
  REQUIRE(make_rational(4, 6).numerator() == 2);
  REQUIRE(make_rational(4, 6).denominator() == 3);
  REQUIRE(make_rational(0, 7).numerator() == 0);
  REQUIRE(make_rational(0, 7).denominator() == 1);
  REQUIRE(make_rational(8, 5).numerator() == 8);
  REQUIRE(make_rational(8, 5).denominator() == 5);
  REQUIRE_THROWS_AS(make_rational(1, 0), std::domain_error);
  REQUIRE_THROWS_AS(make_rational(-2, 3), std::domain_error);
}

TEST_CASE("make_rational is scale invariant", "[arith]") {
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> small(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    Int a = small(rng);
    Int b = small(rng) + 1;
    Int k = small(rng) + 1;
    REQUIRE(make_rational(a * k, b * k) == make_rational(a, b));
  }
}

TEST_CASE("rational arithmetic and parsing", "[arith]") {
  Rational a = Rational::parse("3/4");
  Rational b = Rational::parse("5");
  REQUIRE(a + b == Rational(Int(23), Int(4)));
  REQUIRE(b - a == Rational(Int(17), Int(4)));
  REQUIRE(a * b == Rational(Int(15), Int(4)));
  REQUIRE(b / a == Rational(Int(20), Int(3)));
  REQUIRE(a < b);
  REQUIRE(a.str() == "3/4");
  REQUIRE(b.str() == "5");
  REQUIRE(b.str_canonical() == "5/1");
  REQUIRE_THROWS_AS(Rational::parse("1/0"), std::domain_error);
  REQUIRE_THROWS_AS(Rational::parse("x"), std::domain_error);
  REQUIRE_THROWS_AS(a / Rational(0), std::domain_error);
  REQUIRE(floor_div(Rational(Int(7), Int(2)), Rational(Int(2), Int(3))) == 5);
}

TEST_CASE("p-adic valuation on the listed examples", "[arith]") {
  REQUIRE(padic_valuation(2, Rational(12)) == ExtValuation::finite(2));
  REQUIRE(padic_valuation(2, Rational(Int(3), Int(4))) ==
          ExtValuation::finite(-2));
  REQUIRE(padic_valuation(5, Rational(0)).is_infinite());
  REQUIRE_THROWS_AS(padic_valuation(6, Rational(10)), std::domain_error);
}

TEST_CASE("valuation axioms hold on random rationals", "[arith][property]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(0, 40);
  std::uniform_int_distribution<int> den(1, 40);
  std::vector<Int> primes;
  for (std::int64_t p : primes_up_to(100)) primes.push_back(Int(p));
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const Int& p = primes[pick(rng)];
    Rational r = make_rational(num(rng), den(rng));
    Rational s = make_rational(num(rng), den(rng));
    REQUIRE(padic_valuation(p, r * s) ==
            padic_valuation(p, r) + padic_valuation(p, s));
    REQUIRE(padic_valuation(p, r + s) >=
            ExtValuation::min(padic_valuation(p, r), padic_valuation(p, s)));
  }
}

TEST_CASE("extended valuation arithmetic keeps infinity distinct", "[arith]") {
  ExtValuation inf = ExtValuation::infinity();
  ExtValuation two = ExtValuation::finite(2);
  REQUIRE((inf + two).is_infinite());
  REQUIRE(two + ExtValuation::finite(-5) == ExtValuation::finite(-3));
  REQUIRE(two < inf);
  REQUIRE(ExtValuation::min(inf, two) == two);
  REQUIRE_THROWS_AS(inf.value(), std::logic_error);
}

TEST_CASE("primes_up_to matches trial division", "[arith]") {
  REQUIRE(primes_up_to(10) == std::vector<std::int64_t>{2, 3, 5, 7});
  REQUIRE(primes_up_to(2) == std::vector<std::int64_t>{2});
  REQUIRE(primes_up_to(30) ==
          std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  REQUIRE_THROWS_AS(primes_up_to(1), std::domain_error);

  auto sieved = primes_up_to(10000);
  std::vector<std::int64_t> trial;
  for (std::int64_t n = 2; n <= 10000; ++n) {
    if (oracles::trial_division_prime(n)) trial.push_back(n);
  }
  REQUIRE(sieved == trial);
}

TEST_CASE("is_prime handles large and adversarial inputs", "[arith]") {
  REQUIRE(is_prime(Int(2)));
  REQUIRE(is_prime(Int("2305843009213693951")));  // 2^61 - 1
  REQUIRE_FALSE(is_prime(Int(561)));              // Carmichael
  REQUIRE_FALSE(is_prime(Int(1)));
  REQUIRE_FALSE(is_prime(Int("2305843009213693953")));
  for (std::int64_t n = 2; n <= 2000; ++n) {
    REQUIRE(is_prime(Int(n)) == oracles::trial_division_prime(n));
  }
}

TEST_CASE("next_prime_satisfying returns the smallest admissible prime",
          "[arith]") {
  REQUIRE(next_prime_satisfying(4, [](const Int& p) { return (p & 1) != 0; }) ==
          5);
  REQUIRE(next_prime_satisfying(2, [](const Int&) { return true; }) == 2);
  REQUIRE(next_prime_satisfying(
              7, [](const Int& p) { return p != 7 && p != 11; }) == 13);
  REQUIRE_THROWS_MATCHES(
      next_prime_satisfying(2, [](const Int&) { return false; }, 50),
      ResourceError,
      Catch::Matchers::Predicate<ResourceError>(
          [](const ResourceError& e) { return e.cap() == 50; }));
}
