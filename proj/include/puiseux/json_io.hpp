#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "puiseux/arith.hpp"
#include "puiseux/goldbach.hpp"
#include "puiseux/int_submonoid.hpp"
#include "puiseux/realization.hpp"
#include "puiseux/staged.hpp"

namespace puiseux {

using Json = nlohmann::ordered_json;

namespace json_io {

/// Integers are emitted as JSON numbers while they fit in 64 bits and as
/// decimal strings beyond that (the schemas admit both).
inline Json int_value(const Int& v) {
  static const Int kMin = std::numeric_limits<std::int64_t>::min();
  static const Int kMax = std::numeric_limits<std::int64_t>::max();
  if (v >= kMin && v <= kMax) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Json rational_value(const Rational& r) {
  return Json(r.str_canonical());
}

inline Json length_set_value(const LengthSet& s) {
  Json arr = Json::array();
  for (const Int& v : s.values) arr.push_back(int_value(v));
  return arr;
}

inline Json int_list_value(const std::vector<Int>& v) {
  Json arr = Json::array();
  for (const Int& x : v) arr.push_back(int_value(x));
  return arr;
}

inline Json rational_list_value(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const Rational& x : v) arr.push_back(rational_value(x));
  return arr;
}

inline Json factorization_value(const FactorizationVector& z) {
  return int_list_value(z.exponents);
}

inline Json stage_value(const Stage& stage) {
  Json out;
  out["index"] = stage.index;
  out["atoms"] = rational_list_value(stage.atoms);
  out["primes"] = int_list_value(stage.primes);
  if (stage.witness_x && stage.witness_target) {
    Json witness;
    witness["x"] = rational_value(*stage.witness_x);
    witness["target"] = length_set_value(*stage.witness_target);
    out["witness"] = witness;
  }
  if (stage.realized_monoid) {
    Json realized;
    realized["atoms"] = int_list_value(stage.realized_monoid->atoms);
    realized["element"] = int_value(*stage.realized_element);
    out["realized"] = realized;
    out["pre_shift"] = int_value(*stage.pre_shift);
  }
  if (!stage.pair_sources.empty()) {
    Json pairs = Json::array();
    for (const PairSource& src : stage.pair_sources) {
      Json p;
      p["i"] = static_cast<std::int64_t>(src.first);
      p["j"] = static_cast<std::int64_t>(src.second);
      p["prime"] = int_value(src.prime);
      p["atom_index"] = static_cast<std::int64_t>(src.atom_index);
      pairs.push_back(p);
    }
    out["pairs"] = pairs;
  }
  return out;
}

inline Json stage_dump_value(const StagedMonoid& m, int stages) {
  Json arr = Json::array();
  for (int t = 1; t <= stages; ++t) arr.push_back(stage_value(m.stage(t)));
  return arr;
}

inline Json realization_value(const RealizationResult& r) {
  Json out;
  out["atoms"] = int_list_value(r.monoid.atoms);
  out["element"] = int_value(r.element);
  out["lengths"] = length_set_value(r.verified_set);
  return out;
}

inline Json goldbach_report_value(const GoldbachReport& report) {
  Json out;
  out["bound"] = report.bound;
  out["goldbach"] = length_set_value(report.goldbach);
  out["formula_L2"] = length_set_value(report.formula_l2);
  out["discrepancies"] = int_list_value(report.discrepancies);
  out["weak_goldbach_ok"] = report.weak_goldbach_ok;
  if (report.l3_checked) {
    Json l3 = Json::array();
    for (const auto& [n, in] : report.l3_membership) {
      Json entry;
      entry["n"] = n;
      entry["in_formula_set"] = in;
      l3.push_back(entry);
    }
    out["L3_membership"] = l3;
    out["L3_z_ge_7_included"] = report.l3_z_ge_7_included;
    Json below = Json::array();
    for (std::int64_t n : report.l3_members_below_7) below.push_back(n);
    out["L3_members_below_7"] = below;
  }
  return out;
}

}  // namespace json_io
}  // namespace puiseux
