#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/arith.hpp"
#include "puiseux/caps.hpp"
#include "puiseux/fg_puiseux.hpp"
#include "puiseux/staged.hpp"

namespace puiseux {

/// Re-verifies that every cumulative atom prefix is strictly nested and
/// is the minimal generating set of its span (normalize round-trip).
inline std::vector<std::string> audit_stage_minimality(const StagedMonoid& m,
                                                       int stages,
                                                       const Caps& caps) {
  std::vector<std::string> violations;
  std::size_t prev_count = 0;
  for (int t = 1; t <= stages; ++t) {
    std::vector<Rational> cumulative = m.cumulative_atoms(t);
    if (cumulative.size() <= prev_count && t > 1) {
      violations.push_back("stage " + std::to_string(t) +
                           ": cumulative atom set did not grow");
    }
    prev_count = cumulative.size();
    std::vector<Rational> sorted = cumulative;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      violations.push_back("stage " + std::to_string(t) +
                           ": duplicate cumulative atom");
      continue;
    }
    FGPuiseux normalized = normalize(cumulative, caps);
    if (normalized.atoms != sorted) {
      violations.push_back("stage " + std::to_string(t) +
                           ": cumulative atom set not minimal");
    }
  }
  return violations;
}

/// Full-SSL audit: stage conditions (1)-(4), target-set stabilization at
/// every deeper truncation, and cumulative minimality.
inline std::vector<std::string> audit_full_ssl(const StagedMonoid& m,
                                               int stages,
                                               const Caps& caps = default_caps()) {
  std::vector<std::string> violations;
  for (int l = 1; l <= stages; ++l) {
    const Stage& stage = m.stage(l);
    const Int& p = stage.primes.front();
    LengthSet target = subset_enumeration(Int(l));
    if (!stage.witness_target || *stage.witness_target != target) {
      violations.push_back("stage " + std::to_string(l) +
                           ": witness target is not the enumerated subset");
    }
    for (const Rational& a : stage.atoms) {
      if (a.denominator() != p) {
        violations.push_back("stage " + std::to_string(l) +
                             ": atom denominator differs from stage prime");
      }
      if (!(Rational(p) > Rational(2) * a)) {
        violations.push_back("stage " + std::to_string(l) +
                             ": prime bound 2a violated");
      }
    }
    if (!(Rational(p) > Rational(2) * *stage.witness_x)) {
      violations.push_back("stage " + std::to_string(l) +
                           ": prime bound 2x violated");
    }
    if (l > 1) {
      const Stage& prev = m.stage(l - 1);
      if (!(prev.atoms.back() < stage.atoms.front())) {
        violations.push_back("stage " + std::to_string(l) +
                             ": atoms do not clear the previous stage");
      }
    }
    for (int t = l; t <= stages; ++t) {
      LengthSet truncated = m.truncated_length_set(*stage.witness_x, t);
      if (truncated != target) {
        violations.push_back("stage " + std::to_string(l) +
                             ": length set at truncation " + std::to_string(t) +
                             " is " + truncated.str() + ", expected " +
                             target.str());
      }
    }
  }
  auto minimality = audit_stage_minimality(m, stages, caps);
  violations.insert(violations.end(), minimality.begin(), minimality.end());
  return violations;
}

/// Non-two audit: cumulative minimality, and for every pair swept at a
/// materialized stage, 2 in L(a_i + a_j) together with the odd longer
/// length minted for the pair; across stages the minted lengths for a
/// fixed pair must strictly increase.
inline std::vector<std::string> audit_non_two(const StagedMonoid& m,
                                              int stages,
                                              const Caps& caps = default_caps()) {
  std::vector<std::string> violations;
  auto note_pair = [](std::size_t i, std::size_t j) {
    return "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  std::map<std::pair<std::size_t, std::size_t>, Int> last_prime;
  for (int t = 3; t <= stages; ++t) {
    const Stage& stage = m.stage(t);
    std::vector<Rational> atoms = m.cumulative_atoms(t);
    detail::RationalLengthSolver solver(atoms, caps);
    for (const PairSource& src : stage.pair_sources) {
      Rational x = atoms[src.first - 1] + atoms[src.second - 1];
      LengthSet lengths = solver.length_set(x);
      if (!lengths.contains(Int(2))) {
        violations.push_back(note_pair(src.first, src.second) + " at stage " +
                             std::to_string(t) + ": 2 not in length set");
      }
      if (!lengths.contains(src.prime)) {
        violations.push_back(note_pair(src.first, src.second) + " at stage " +
                             std::to_string(t) + ": minted length " +
                             src.prime.str() + " not in length set");
      }
      bool has_longer_odd = false;
      for (const Int& l : lengths.values) {
        if (l > 2 && (l & 1) != 0) has_longer_odd = true;
      }
      if (!has_longer_odd) {
        violations.push_back(note_pair(src.first, src.second) + " at stage " +
                             std::to_string(t) + ": no odd length > 2");
      }
      auto key = std::make_pair(src.first, src.second);
      auto prev = last_prime.find(key);
      if (prev != last_prime.end() && !(prev->second < src.prime)) {
        violations.push_back(note_pair(src.first, src.second) +
                             ": minted lengths not strictly increasing");
      }
      last_prime[key] = src.prime;
    }
  }
  auto minimality = audit_stage_minimality(m, stages, caps);
  violations.insert(violations.end(), minimality.begin(), minimality.end());
  return violations;
}

}  // namespace puiseux
