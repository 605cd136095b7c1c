#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/arith.hpp"
#include "puiseux/caps.hpp"
#include "puiseux/detail/length_solver.hpp"
#include "puiseux/fg_puiseux.hpp"
#include "puiseux/int_submonoid.hpp"
#include "puiseux/realization.hpp"

namespace puiseux {

// ---------------------------------------------------------------------------
// Prime pools
// ---------------------------------------------------------------------------

/// Source of primes for the staged constructions: all primes, a congruence
/// class (e.g. p = 1 mod 4), or an explicit finite list. Finite pools can
/// exhaust, which surfaces as a ResourceError.
struct PrimePool {
  enum class Kind { All, Congruence, Explicit };
  Kind kind = Kind::All;
  Int modulus = 0;
  Int residue = 0;
  std::vector<Int> explicit_list;  // ascending primes

  static PrimePool all() { return PrimePool{}; }
  static PrimePool congruence(Int modulus, Int residue) {
    PrimePool p;
    p.kind = Kind::Congruence;
    p.modulus = std::move(modulus);
    p.residue = std::move(residue);
    return p;
  }
  static PrimePool from_list(std::vector<Int> primes) {
    PrimePool p;
    p.kind = Kind::Explicit;
    p.explicit_list = std::move(primes);
    std::sort(p.explicit_list.begin(), p.explicit_list.end());
    return p;
  }

  bool contains(const Int& p) const {
    switch (kind) {
      case Kind::All:
        return true;
      case Kind::Congruence:
        return p % modulus == residue;
      case Kind::Explicit:
        return std::binary_search(explicit_list.begin(), explicit_list.end(),
                                  p);
    }
    return false;
  }

  /// Smallest pool prime > lower satisfying the predicate.
  Int next(const Int& lower, const std::function<bool(const Int&)>& admissible,
           std::int64_t search_cap) const {
    if (kind == Kind::Explicit) {
      for (const Int& p : explicit_list) {
        if (p > lower && admissible(p)) return p;
      }
      throw ResourceError("prime pool exhausted",
                          static_cast<std::int64_t>(explicit_list.size()));
    }
    return next_prime_satisfying(
        lower + 1,
        [&](const Int& p) { return contains(p) && admissible(p); },
        search_cap);
  }

  std::string describe() const {
    switch (kind) {
      case Kind::All:
        return "all";
      case Kind::Congruence:
        return residue.str() + "mod" + modulus.str();
      case Kind::Explicit:
        return "explicit(" + std::to_string(explicit_list.size()) + ")";
    }
    return "?";
  }
};

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

/// Record of one atom of the non-two construction: the unordered index
/// pair whose sum it divides and the odd prime used. Indices are 1-based,
/// matching the atom numbering a_1, a_2, ...
struct PairSource {
  std::size_t first = 0;
  std::size_t second = 0;
  Int prime;
  std::size_t atom_index = 0;  // 1-based position in the cumulative list
};

/// One stage of a staged construction: the atoms joining at this stage,
/// the primes introduced, and (for the full-SSL construction) the witness
/// element whose stage-local length set realizes the stage target.
struct Stage {
  int index = 0;
  std::vector<Rational> atoms;
  std::vector<Int> primes;
  std::optional<Rational> witness_x;
  std::optional<LengthSet> witness_target;
  // full-SSL provenance
  std::optional<IntSubmonoid> realized_monoid;
  std::optional<Int> realized_element;
  std::optional<Int> pre_shift;
  // non-two provenance
  std::vector<PairSource> pair_sources;
};

enum class StagedKind { Elementary, FullSSL, NonTwo };

inline std::string staged_kind_name(StagedKind k) {
  switch (k) {
    case StagedKind::Elementary:
      return "elementary";
    case StagedKind::FullSSL:
      return "full-ssl";
    case StagedKind::NonTwo:
      return "non-two";
  }
  return "?";
}

/// Fixed bijection n -> nonempty finite subset of Z>=2: bit i of n set
/// means i+2 is in the set. Keeps the stage targets reproducible.
inline LengthSet subset_enumeration(const Int& n) {
  if (n < 1) throw std::domain_error("subset_enumeration: n must be >= 1");
  LengthSet out;
  Int code = n;
  Int element = 2;
  while (code > 0) {
    if ((code & 1) != 0) out.values.push_back(element);
    code >>= 1;
    ++element;
  }
  return out;
}

// ---------------------------------------------------------------------------
// StagedMonoid
// ---------------------------------------------------------------------------

/// Lazily materialized infinite Puiseux monoid presented by nested stages.
/// Cumulative atom lists keep creation order (the non-two pair indexing
/// depends on it); they are strictly nested and stay minimal, which the
/// audit entry points re-verify.
class StagedMonoid {
 public:
  static StagedMonoid elementary() {
    StagedMonoid m(StagedKind::Elementary, PrimePool::all(), SearchBounds{},
                   default_caps());
    m.declared_infimum_ = Rational(0);
    return m;
  }

  static StagedMonoid full_ssl(PrimePool pool = PrimePool::all(),
                               SearchBounds bounds = SearchBounds{},
                               Caps caps = default_caps()) {
    return StagedMonoid(StagedKind::FullSSL, std::move(pool), bounds, caps);
  }

  static StagedMonoid non_two(Caps caps = default_caps()) {
    return StagedMonoid(StagedKind::NonTwo, PrimePool::all(), SearchBounds{},
                        caps);
  }

  StagedKind kind() const { return kind_; }
  const PrimePool& pool() const { return pool_; }
  int stage_count() const { return static_cast<int>(stages_.size()); }
  const std::vector<Stage>& stages() const { return stages_; }
  const Stage& stage(int t) const {
    require_stage(t);
    return stages_[static_cast<std::size_t>(t - 1)];
  }

  const std::optional<Rational>& declared_infimum() const {
    return declared_infimum_;
  }
  const std::optional<Rational>& declared_lower_bound() const {
    return declared_lower_bound_;
  }

  /// Generator stream view (atoms in creation order) with the monoid's
  /// certificates attached.
  GeneratorStream generator_stream() {
    return GeneratorStream{
        [this](std::size_t i) {
          ensure_stages_for_atom(i);
          return cumulative_[i];
        },
        declared_infimum_, declared_lower_bound_};
  }

  /// Materializes stages 1..t (cached; later calls are free).
  void ensure_stages(int t) {
    while (stage_count() < t) build_next_stage();
  }

  /// Cumulative atoms through stage t, creation order.
  std::vector<Rational> cumulative_atoms(int t) const {
    require_stage(t);
    std::size_t count = 0;
    for (int i = 0; i < t; ++i) count += stages_[static_cast<std::size_t>(i)].atoms.size();
    return std::vector<Rational>(cumulative_.begin(),
                                 cumulative_.begin() + static_cast<std::ptrdiff_t>(count));
  }

  /// Number of atoms through stage t (the k_t of the non-two recursion).
  std::size_t atom_count(int t) const { return cumulative_atoms(t).size(); }

  const PrimeSet& cumulative_denominator_primes() const { return denom_primes_; }

  /// L(x) over the finitely generated truncation at stage t. Monotone
  /// nondecreasing in t and always a subset of the true L(x).
  LengthSet truncated_length_set(const Rational& x, int t) const {
    std::vector<Rational> atoms = cumulative_atoms(t);
    detail::RationalLengthSolver solver(std::move(atoms), caps_);
    return solver.length_set(x);
  }

  /// Factorizations over the truncation at stage t, exponents parallel to
  /// cumulative_atoms(t).
  std::vector<FactorizationVector> truncated_factorizations(const Rational& x,
                                                            int t) const {
    std::vector<Rational> atoms = cumulative_atoms(t);
    detail::RationalLengthSolver solver(std::move(atoms), caps_);
    return solver.factorizations(x);
  }

 private:
  StagedMonoid(StagedKind kind, PrimePool pool, SearchBounds bounds, Caps caps)
      : kind_(kind), pool_(std::move(pool)), bounds_(bounds), caps_(caps) {}

  void require_stage(int t) const {
    if (t < 1 || t > stage_count()) {
      throw StateError("stage " + std::to_string(t) + " not materialized (" +
                       std::to_string(stage_count()) + " built)");
    }
  }

  void ensure_stages_for_atom(std::size_t i) {
    if (kind_ == StagedKind::Elementary) {
      while (cumulative_.size() <= i) build_next_stage();
      return;
    }
    if (cumulative_.size() <= i) {
      throw StateError("atom index " + std::to_string(i + 1) +
                       " not materialized");
    }
  }

  void append_stage(Stage stage) {
    for (const Rational& a : stage.atoms) {
      cumulative_.push_back(a);
      for (const Int& p : detail::prime_factors(a.denominator())) {
        denom_primes_.insert(p);
      }
    }
    stages_.push_back(std::move(stage));
  }

  void build_next_stage() {
    switch (kind_) {
      case StagedKind::Elementary:
        build_elementary_stage();
        return;
      case StagedKind::FullSSL:
        build_full_ssl_stage();
        return;
      case StagedKind::NonTwo:
        build_non_two_stage();
        return;
    }
  }

  void build_elementary_stage() {
    int n = stage_count() + 1;
    Int prev = stages_.empty() ? Int(1) : stages_.back().primes.back();
    Int p = next_prime_satisfying(prev + 1, [](const Int&) { return true; },
                                  caps_.prime_search_cap);
    Stage stage;
    stage.index = n;
    stage.atoms.push_back(Rational(Int(1), p));
    stage.primes.push_back(p);
    append_stage(std::move(stage));
  }

  // One stage of the full-SSL construction: realize the stage target,
  // shift it up past the previous stage, scale by (p-1)/p for the
  // smallest admissible pool prime p, then re-check all four stage
  // conditions. A failed check is an internal error.
  void build_full_ssl_stage() {
    int n = stage_count() + 1;
    LengthSet target = subset_enumeration(Int(n));
    RealizeOutcome found = realize(target, bounds_, caps_);
    if (!found.result) {
      throw ResourceError(
          "full-ssl stage " + std::to_string(n) +
              ": no realization of " + target.str() + " within bounds (" +
              bounds_.describe() + ")",
          bounds_.max_element);
    }
    const IntSubmonoid& realized = found.result->monoid;
    const Int& element = found.result->element;

    std::optional<Rational> prev_max;
    if (!stages_.empty()) prev_max = stages_.back().atoms.back();

    // Smallest integer shift c with c*min(A') > max A_{n-1}; below that the
    // scaled minimum can never clear the previous stage, and at it the
    // clearance inequality holds for every large enough prime.
    Int shift = 1;
    if (prev_max) {
      shift = floor_div(*prev_max, Rational(realized.min_atom())) + 1;
      if (shift < 1) shift = 1;
    }
    std::vector<Int> shifted;
    for (const Int& a : realized.atoms) shifted.push_back(a * shift);
    Int shifted_element = element * shift;

    Int search_floor = 2 * shifted_element;
    if (2 * shifted.back() > search_floor) search_floor = 2 * shifted.back();
    Int p = pool_.next(
        search_floor,
        [&](const Int& candidate) {
          for (const Int& a : shifted) {
            if (a % candidate == 0) return false;
          }
          if (prev_max) {
            Rational scaled_min =
                Rational(shifted.front()) * Rational(candidate - 1, candidate);
            if (!(*prev_max < scaled_min)) return false;
          }
          return true;
        },
        caps_.prime_search_cap);

    Rational ratio(p - 1, p);
    Stage stage;
    stage.index = n;
    for (const Int& a : shifted) stage.atoms.push_back(Rational(a) * ratio);
    stage.primes.push_back(p);
    stage.witness_x = Rational(shifted_element) * ratio;
    stage.witness_target = target;
    stage.realized_monoid = realized;
    stage.realized_element = element;
    stage.pre_shift = shift;

    audit_full_ssl_stage(stage, prev_max);
    append_stage(std::move(stage));
    if (n == 1) declared_lower_bound_ = stages_.front().atoms.front();
  }

  void audit_full_ssl_stage(const Stage& stage,
                            const std::optional<Rational>& prev_max) const {
    const Int& p = stage.primes.front();
    // (2) every stage atom has denominator exactly p
    for (const Rational& a : stage.atoms) {
      if (a.denominator() != p) {
        throw std::logic_error("full-ssl stage condition (2) violated");
      }
    }
    // (3) p > 2 x_n and p > 2 a for every stage atom
    Rational prime_r{p};
    if (!(prime_r > Rational(2) * *stage.witness_x)) {
      throw std::logic_error("full-ssl stage condition (3) violated (x)");
    }
    for (const Rational& a : stage.atoms) {
      if (!(prime_r > Rational(2) * a)) {
        throw std::logic_error("full-ssl stage condition (3) violated (atom)");
      }
    }
    // (4) max A_{n-1} < min A_n
    if (prev_max && !(*prev_max < stage.atoms.front())) {
      throw std::logic_error("full-ssl stage condition (4) violated");
    }
    // (1) the stage-local length set of the witness equals the target
    detail::RationalLengthSolver solver(stage.atoms, caps_);
    if (solver.length_set(*stage.witness_x) != *stage.witness_target) {
      throw std::logic_error("full-ssl stage condition (1) violated");
    }
  }

  // One stage of the non-two construction: for every unordered index pair
  // (s, t) over the current atoms, in lex order, mint the atom
  // (a_s + a_t) / p for the smallest admissible fresh odd prime p.
  void build_non_two_stage() {
    int n = stage_count() + 1;
    if (n == 1) {
      Stage stage;
      stage.index = 1;
      stage.atoms.push_back(Rational(1));
      append_stage(std::move(stage));
      return;
    }
    if (n == 2) {
      Stage stage;
      stage.index = 2;
      stage.atoms.push_back(Rational(Int(2), Int(3)));
      stage.primes.push_back(Int(3));
      append_stage(std::move(stage));
      return;
    }
    std::size_t k = cumulative_.size();
    Stage stage;
    stage.index = n;
    PrimeSet batch;
    for (std::size_t s = 1; s <= k; ++s) {
      for (std::size_t t = s; t <= k; ++t) {
        Rational sum = cumulative_[s - 1] + cumulative_[t - 1];
        Int p = next_prime_satisfying(
            3,
            [&](const Int& candidate) {
              if (denom_primes_.contains(candidate)) return false;
              if (batch.contains(candidate)) return false;
              return sum.numerator() % candidate != 0;
            },
            caps_.prime_search_cap);
        batch.insert(p);
        stage.atoms.push_back(sum / Rational(p));
        stage.primes.push_back(p);
        stage.pair_sources.push_back(
            PairSource{s, t, p, k + stage.pair_sources.size() + 1});
      }
    }
    append_stage(std::move(stage));
  }

  StagedKind kind_;
  PrimePool pool_;
  SearchBounds bounds_;
  Caps caps_;
  std::vector<Stage> stages_;
  std::vector<Rational> cumulative_;
  PrimeSet denom_primes_;
  std::optional<Rational> declared_infimum_;
  std::optional<Rational> declared_lower_bound_;
};

// ---------------------------------------------------------------------------
// Module operations
// ---------------------------------------------------------------------------

inline StagedMonoid elementary_monoid() { return StagedMonoid::elementary(); }

/// Builds the full-SSL construction through n_stages stages (audited as it
/// goes) and returns it.
inline StagedMonoid build_full_ssl(int n_stages,
                                   PrimePool pool = PrimePool::all(),
                                   SearchBounds bounds = SearchBounds{},
                                   Caps caps = default_caps()) {
  if (n_stages < 1) throw std::domain_error("build_full_ssl: n_stages >= 1");
  StagedMonoid m = StagedMonoid::full_ssl(std::move(pool), bounds, caps);
  m.ensure_stages(n_stages);
  return m;
}

/// Builds the non-two construction through n_stages stages.
inline StagedMonoid build_non_two(int n_stages, Caps caps = default_caps()) {
  if (n_stages < 2) throw std::domain_error("build_non_two: n_stages >= 2");
  StagedMonoid m = StagedMonoid::non_two(caps);
  m.ensure_stages(n_stages);
  return m;
}

inline LengthSet truncated_length_set(const StagedMonoid& m, const Rational& x,
                                      int t) {
  return m.truncated_length_set(x, t);
}

/// Lemma 4.4 content for staged monoids: denominators are unbounded for
/// every kind built here (none is finitely generated).
inline bool is_bounded_denominators(const StagedMonoid&) { return false; }

/// Result of the length-2 witness: x with L(x) = {2}, plus the recomputed
/// length set as certificate.
struct WitnessTwo {
  Rational x;
  LengthSet certificate;
};

/// For a finitely generated Puiseux monoid the infimum q of the nonzero
/// elements is the least atom: x = 2q works, and has no other
/// factorizations because every summand of 2q drawn from atoms >= q must
/// equal q. Certificate recomputed from scratch.
inline WitnessTwo witness_length_two(const FGPuiseux& m,
                                     const Caps& caps = default_caps()) {
  WitnessTwo w;
  w.x = m.min_atom() * Rational(2);
  w.certificate = length_set(m, w.x, caps);
  if (w.certificate != LengthSet({Int(2)})) {
    throw std::logic_error("witness_length_two: certificate not {2}");
  }
  return w;
}

/// Truncation variant: needs the staged monoid to certify a positive
/// infimum. When the infimum is attained as an atom, x = 2q; otherwise
/// x = 2a for the smallest atom a in (q, 3q/2), which exists in any deep
/// enough truncation of a monoid whose atoms approach q.
inline WitnessTwo witness_length_two(const StagedMonoid& m, int t,
                                     const Caps& caps = default_caps()) {
  std::optional<Rational> q = m.declared_lower_bound();
  if (m.declared_infimum() && m.declared_infimum()->is_positive()) {
    q = m.declared_infimum();
  }
  if (!q || !q->is_positive()) {
    throw std::domain_error(
        "witness_length_two: infimum not certified positive");
  }
  std::vector<Rational> atoms = m.cumulative_atoms(t);
  std::sort(atoms.begin(), atoms.end());
  WitnessTwo w;
  if (std::find(atoms.begin(), atoms.end(), *q) != atoms.end()) {
    w.x = *q * Rational(2);
  } else {
    Rational upper = *q * Rational(Int(3), Int(2));
    auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Rational& a) {
      return *q < a && a < upper;
    });
    if (it == atoms.end()) {
      throw StateError(
          "witness_length_two: no atom within (q, 3q/2) in this truncation");
    }
    w.x = *it * Rational(2);
  }
  w.certificate = m.truncated_length_set(w.x, t);
  if (w.certificate != LengthSet({Int(2)})) {
    throw std::logic_error("witness_length_two: certificate not {2}");
  }
  (void)caps;
  return w;
}

/// The longer factorization certifying 2 in L(a_i + a_j) implies more:
/// p copies of the atom minted for the pair (i, j) at its first
/// processing stage.
struct LongerFactorization {
  FactorizationVector z;  // over cumulative_atoms(stage)
  Int length;
  int stage = 0;
  std::size_t atom_index = 0;  // 1-based
};

inline LongerFactorization longer_factorization(const StagedMonoid& m,
                                                std::size_t i, std::size_t j) {
  if (m.kind() != StagedKind::NonTwo) {
    throw std::domain_error("longer_factorization: non-two monoids only");
  }
  if (i < 1 || j < 1) throw std::domain_error("atom indices are 1-based");
  std::size_t s = std::min(i, j);
  std::size_t t = std::max(i, j);
  // First stage whose pair sweep covers (s, t): the sweep over the first
  // cumulative prefix containing atom t. Sweeps start at stage 3; stages
  // 1 and 2 are the seeds.
  for (int stage_idx = 2; stage_idx <= m.stage_count(); ++stage_idx) {
    if (m.atom_count(stage_idx) < t) continue;
    int processing_stage = stage_idx + 1;
    if (processing_stage > m.stage_count()) {
      throw StateError("longer_factorization: stage " +
                       std::to_string(processing_stage) +
                       " required but not materialized");
    }
    const Stage& proc = m.stage(processing_stage);
    for (const PairSource& src : proc.pair_sources) {
      if (src.first == s && src.second == t) {
        LongerFactorization out;
        out.stage = processing_stage;
        out.atom_index = src.atom_index;
        out.length = src.prime;
        out.z.exponents.assign(m.atom_count(processing_stage), Int(0));
        out.z.exponents[src.atom_index - 1] = src.prime;
        return out;
      }
    }
    throw std::logic_error("longer_factorization: pair missing from stage");
  }
  throw StateError("longer_factorization: atom index " + std::to_string(t) +
                   " not materialized");
}

}  // namespace puiseux
