#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "puiseux/int_submonoid.hpp"
#include "support/oracles.hpp"

using namespace puiseux;

namespace {

std::vector<Rational> as_rationals(const std::vector<Int>& atoms) {
  std::vector<Rational> out;
  for (const Int& a : atoms) out.push_back(Rational(a));
  return out;
}

}  // namespace

TEST_CASE("minimalize drops redundant generators", "[numsgp]") {
  REQUIRE(minimalize({2, 3, 4}).atoms == std::vector<Int>{2, 3});
  REQUIRE(minimalize({6, 9, 20}).atoms == std::vector<Int>{6, 9, 20});
  REQUIRE(minimalize({5}).atoms == std::vector<Int>{5});
  REQUIRE(minimalize({3, 3, 7, 7}).atoms == std::vector<Int>{3, 7});
  REQUIRE_THROWS_AS(minimalize({}), std::domain_error);
  REQUIRE_THROWS_AS(minimalize({0, 2}), std::domain_error);
}

TEST_CASE("minimalize keeps the span", "[numsgp][property]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> value(1, 25);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Int> gens;
    for (int i = 0, n = count(rng); i < n; ++i) gens.push_back(value(rng));
    IntSubmonoid minimal = minimalize(gens);
    IntSubmonoid full;
    std::set<Int> dedup(gens.begin(), gens.end());
    full.atoms.assign(dedup.begin(), dedup.end());
    for (Int n = 0; n <= 100; ++n) {
      REQUIRE(is_member(minimal, n) == is_member(full, n));
    }
    // removing any atom changes the monoid
    for (std::size_t i = 0; i < minimal.atoms.size(); ++i) {
      if (minimal.atoms.size() == 1) break;
      IntSubmonoid without;
      for (std::size_t j = 0; j < minimal.atoms.size(); ++j) {
        if (j != i) without.atoms.push_back(minimal.atoms[j]);
      }
      REQUIRE_FALSE(is_member(without, minimal.atoms[i]));
    }
  }
}

TEST_CASE("is_member decides representability", "[numsgp]") {
  IntSubmonoid m23{{2, 3}};
  REQUIRE_FALSE(is_member(m23, 1));
  REQUIRE(is_member(m23, 7));
  REQUIRE(is_member(m23, 0));
  IntSubmonoid mcnugget{{6, 9, 20}};
  REQUIRE_FALSE(is_member(mcnugget, 43));
  REQUIRE(is_member(mcnugget, 44));
  IntSubmonoid even{{4, 6}};  // gcd 2: no cofiniteness
  REQUIRE_FALSE(is_member(even, 2));
  REQUIRE_FALSE(is_member(even, 9));
  REQUIRE(is_member(even, 10));
}

TEST_CASE("factorizations enumerate Z(x) in lex order", "[numsgp]") {
  IntSubmonoid m23{{2, 3}};
  auto z6 = factorizations(m23, 6);
  REQUIRE(z6.size() == 2);
  REQUIRE(z6[0].exponents == std::vector<Int>{0, 2});
  REQUIRE(z6[1].exponents == std::vector<Int>{3, 0});
  REQUIRE(std::is_sorted(z6.begin(), z6.end()));

  auto z0 = factorizations(m23, 0);
  REQUIRE(z0.size() == 1);
  REQUIRE(z0[0].exponents == std::vector<Int>{0, 0});

  REQUIRE(factorizations(m23, 1).empty());

  Caps tight;
  tight.factorization_cap = 1;
  REQUIRE_THROWS_AS(factorizations(m23, 6, tight), ResourceError);
}

TEST_CASE("atoms have exactly the unit-vector factorization", "[numsgp]") {
  IntSubmonoid m{{5, 7, 9, 11}};
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    auto z = factorizations(m, m.atoms[i]);
    REQUIRE(z.size() == 1);
    REQUIRE(z[0].length() == 1);
    REQUIRE(z[0].exponents[i] == 1);
  }
}

TEST_CASE("length_set on the listed examples", "[numsgp]") {
  IntSubmonoid m23{{2, 3}};
  REQUIRE(length_set(m23, 6) == LengthSet({2, 3}));
  REQUIRE(length_set(m23, 1).empty());
  IntSubmonoid unit{{1}};
  REQUIRE(length_set(unit, 12345) == LengthSet({12345}));
  REQUIRE(length_set(m23, 0) == LengthSet({0}));
}

TEST_CASE("length DP agrees with exhaustive enumeration",
          "[numsgp][property]") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> value(1, 20);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> element(0, 200);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Int> gens;
    for (int i = 0, n = count(rng); i < n; ++i) gens.push_back(value(rng));
    IntSubmonoid monoid = minimalize(gens);
    Int n = element(rng);
    LengthSet via_dp = length_set(monoid, n);
    LengthSet via_enum;
    for (const auto& z : factorizations(monoid, n)) via_enum.insert(z.length());
    REQUIRE(via_dp == via_enum);
    REQUIRE(via_dp == oracles::brute_length_set(as_rationals(monoid.atoms),
                                                Rational(n)));
  }
}

TEST_CASE("length sets obey the BF bounds and additivity",
          "[numsgp][property]") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> value(2, 30);
  std::uniform_int_distribution<int> element(0, 150);
  for (int trial = 0; trial < 40; ++trial) {
    IntSubmonoid monoid = minimalize({value(rng), value(rng), value(rng)});
    Int x = element(rng);
    Int y = element(rng);
    LengthSet lx = length_set(monoid, x);
    LengthSet ly = length_set(monoid, y);
    if (!lx.empty()) {
      // ceil(x / max atom) <= min L(x); max L(x) <= floor(x / min atom)
      Int lo = (x + monoid.max_atom() - 1) / monoid.max_atom();
      Int hi = x / monoid.min_atom();
      REQUIRE(lx.values.front() >= lo);
      REQUIRE(lx.values.back() <= hi);
    }
    LengthSet lxy = length_set(monoid, x + y);
    for (const Int& a : lx.values) {
      for (const Int& b : ly.values) {
        REQUIRE(lxy.contains(a + b));
      }
    }
  }
}
