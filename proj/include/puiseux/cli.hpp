#pragma once

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "puiseux/arith.hpp"
#include "puiseux/audits.hpp"
#include "puiseux/caps.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/fg_puiseux.hpp"
#include "puiseux/goldbach.hpp"
#include "puiseux/int_submonoid.hpp"
#include "puiseux/json_io.hpp"
#include "puiseux/realization.hpp"
#include "puiseux/staged.hpp"

namespace puiseux::cli {

/// Everything that parameterizes a run. Echoed into every JSON document
/// so results are reproducible from the output alone. No seeds anywhere:
/// the whole pipeline is deterministic.
struct RunConfig {
  std::string output_format = "text";
  SearchBounds bounds;
  Caps caps;
};

inline Json config_value(const RunConfig& config) {
  Json bounds;
  bounds["max_atoms"] = config.bounds.max_atoms;
  bounds["max_atom_value"] = config.bounds.max_atom_value;
  bounds["max_element"] = config.bounds.max_element;
  Json caps;
  caps["factorization_cap"] = config.caps.factorization_cap;
  caps["membership_value_cap"] = config.caps.membership_value_cap;
  caps["dp_cell_cap"] = config.caps.dp_cell_cap;
  caps["prime_search_cap"] = config.caps.prime_search_cap;
  caps["solver_node_cap"] = config.caps.solver_node_cap;
  caps["formula_tuple_cap"] = config.caps.formula_tuple_cap;
  Json out;
  out["output_format"] = config.output_format;
  out["bounds"] = bounds;
  out["caps"] = caps;
  return out;
}

namespace detail {

inline std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, sep)) out.push_back(trim(piece));
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const std::string& piece : split(text, ',')) {
    if (piece.empty()) throw std::domain_error("empty entry in list: " + text);
    out.push_back(Rational::parse(piece));
  }
  if (out.empty()) throw std::domain_error("empty list");
  return out;
}

inline LengthSet parse_int_set(const std::string& text) {
  std::vector<Int> values;
  for (const std::string& piece : split(text, ',')) {
    if (piece.empty()) throw std::domain_error("empty entry in set: " + text);
    Rational r = Rational::parse(piece);
    if (!r.is_integer()) throw std::domain_error("set entries must be integers");
    values.push_back(r.numerator());
  }
  return LengthSet(std::move(values));
}

inline bool all_integers(const std::vector<Rational>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](const Rational& r) { return r.is_integer(); });
}

inline PrimePool parse_prime_pool(const std::string& text) {
  if (text.empty() || text == "all") return PrimePool::all();
  auto pos = text.find("mod");
  if (pos == std::string::npos) {
    throw std::domain_error("prime pool must be 'all' or '<r>mod<m>'");
  }
  Rational residue = Rational::parse(text.substr(0, pos));
  Rational modulus = Rational::parse(text.substr(pos + 3));
  if (!residue.is_integer() || !modulus.is_integer() ||
      modulus.numerator() < 2) {
    throw std::domain_error("bad prime pool congruence: " + text);
  }
  return PrimePool::congruence(modulus.numerator(), residue.numerator());
}

inline void apply_caps_env(RunConfig& config) {
  const char* raw = std::getenv("PUISEUX_CAPS");
  if (raw == nullptr) return;
  for (const std::string& piece : split(raw, ',')) {
    if (piece.empty()) continue;
    auto eq = piece.find('=');
    if (eq == std::string::npos) {
      throw std::domain_error("PUISEUX_CAPS entries must be key=value");
    }
    std::string key = trim(piece.substr(0, eq));
    std::int64_t value = std::stoll(trim(piece.substr(eq + 1)));
    if (key == "factorization_cap") config.caps.factorization_cap = value;
    else if (key == "membership_value_cap") config.caps.membership_value_cap = value;
    else if (key == "dp_cell_cap") config.caps.dp_cell_cap = value;
    else if (key == "prime_search_cap") config.caps.prime_search_cap = value;
    else if (key == "solver_node_cap") config.caps.solver_node_cap = value;
    else if (key == "formula_tuple_cap") config.caps.formula_tuple_cap = value;
    else if (key == "max_atoms") config.bounds.max_atoms = static_cast<int>(value);
    else if (key == "max_atom_value") config.bounds.max_atom_value = value;
    else if (key == "max_element") config.bounds.max_element = value;
    else throw std::domain_error("unknown PUISEUX_CAPS key: " + key);
  }
}

inline std::string join_rationals(const std::vector<Rational>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].str();
  }
  return out;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name. Exit codes:
/// 0 success, 1 invariant-audit failure, 2 usage error, 3 domain error,
/// 4 resource cap hit.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  RunConfig config;
  bool json_requested = false;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--output" && args[i + 1] == "json") json_requested = true;
  }

  auto emit_error = [&](const std::string& kind, const std::string& message,
                        std::optional<std::int64_t> cap) {
    if (json_requested) {
      Json doc;
      doc["error"]["kind"] = kind;
      doc["error"]["message"] = message;
      if (cap) doc["error"]["cap"] = *cap;
      err << doc.dump(2) << "\n";
    } else {
      err << "error (" << kind << "): " << message << "\n";
    }
  };

  CLI::App app{"Exact factorization lengths in numerical and Puiseux monoids"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output", config.output_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--factorization-cap", config.caps.factorization_cap);
  app.add_option("--membership-cap", config.caps.membership_value_cap);
  app.add_option("--dp-cell-cap", config.caps.dp_cell_cap);
  app.add_option("--prime-search-cap", config.caps.prime_search_cap);
  app.add_option("--solver-node-cap", config.caps.solver_node_cap);
  app.add_option("--formula-cap", config.caps.formula_tuple_cap);
  app.add_option("--max-atoms", config.bounds.max_atoms);
  app.add_option("--max-atom-value", config.bounds.max_atom_value);
  app.add_option("--max-element", config.bounds.max_element);

  std::string monoid_arg, element_arg, gens_arg, by_arg, m1_arg, m2_arg;
  std::string set_arg, pool_arg = "all";
  int stages_arg = 0;
  std::int64_t bound_arg = 0;
  bool check_l3 = false;

  CLI::App* lengths = app.add_subcommand("lengths", "Set of lengths L(x)");
  lengths->add_option("--monoid", monoid_arg, "Generators, e.g. \"2,3\" or \"1,2/3\"")->required();
  lengths->add_option("--element", element_arg)->required();

  CLI::App* factorize = app.add_subcommand("factorize", "All factorizations Z(x)");
  factorize->add_option("--monoid", monoid_arg)->required();
  factorize->add_option("--element", element_arg)->required();

  CLI::App* atoms_cmd = app.add_subcommand("atoms", "Minimal generating set");
  atoms_cmd->add_option("--gens", gens_arg)->required();

  CLI::App* scale_cmd = app.add_subcommand("scale", "Scaled monoid q*M");
  scale_cmd->add_option("--monoid", monoid_arg)->required();
  scale_cmd->add_option("--by", by_arg)->required();

  CLI::App* iso = app.add_subcommand("iso", "Isomorphism factor, if any");
  iso->add_option("--m1", m1_arg)->required();
  iso->add_option("--m2", m2_arg)->required();

  CLI::App* construct = app.add_subcommand("construct", "Staged constructions");
  construct->require_subcommand(1);
  CLI::App* construct_full = construct->add_subcommand("full-ssl");
  construct_full->add_option("--stages", stages_arg)->required();
  construct_full->add_option("--prime-pool", pool_arg);
  CLI::App* construct_non_two = construct->add_subcommand("non-two");
  construct_non_two->add_option("--stages", stages_arg)->required();

  CLI::App* witness = app.add_subcommand("witness-two", "Element with L(x) = {2}");
  witness->add_option("--monoid", monoid_arg)->required();

  CLI::App* realize_cmd = app.add_subcommand("realize", "Find (N, x) with L(x) = S");
  realize_cmd->add_option("--set", set_arg)->required();

  CLI::App* goldbach_cmd = app.add_subcommand("goldbach", "Goldbach window report");
  goldbach_cmd->add_option("--bound", bound_arg)->required();
  goldbach_cmd->add_flag("--check-l3", check_l3);

  CLI::App* verify = app.add_subcommand("verify", "Run construction audits");
  verify->require_subcommand(1);
  CLI::App* verify_full = verify->add_subcommand("full-ssl");
  verify_full->add_option("--stages", stages_arg)->required();
  verify_full->add_option("--prime-pool", pool_arg);
  CLI::App* verify_non_two = verify->add_subcommand("non-two");
  verify_non_two->add_option("--stages", stages_arg)->required();

  try {
    detail::apply_caps_env(config);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    emit_error("usage", e.what(), std::nullopt);
    return 2;
  } catch (const std::exception& e) {
    emit_error("usage", e.what(), std::nullopt);
    return 2;
  }

  bool json = config.output_format == "json";
  auto emit = [&](Json body) {
    body["config"] = config_value(config);
    out << body.dump(2) << "\n";
  };

  try {
    if (*lengths || *factorize) {
      std::vector<Rational> gens = detail::parse_rational_list(monoid_arg);
      Rational x = Rational::parse(element_arg);
      Json body;
      if (detail::all_integers(gens) && x.is_integer()) {
        std::vector<Int> int_gens;
        for (const Rational& g : gens) int_gens.push_back(g.numerator());
        IntSubmonoid monoid = minimalize(int_gens, config.caps);
        body["atoms"] = json_io::int_list_value(monoid.atoms);
        if (*lengths) {
          LengthSet result = length_set(monoid, x.numerator(), config.caps);
          if (json) {
            body["lengths"] = json_io::length_set_value(result);
            emit(body);
          } else {
            out << result.str() << "\n";
          }
        } else {
          auto zs = factorizations(monoid, x.numerator(), config.caps);
          if (json) {
            Json arr = Json::array();
            for (const auto& z : zs) arr.push_back(json_io::factorization_value(z));
            body["factorizations"] = arr;
            emit(body);
          } else {
            for (const auto& z : zs) {
              out << "(";
              for (std::size_t i = 0; i < z.exponents.size(); ++i) {
                if (i) out << ", ";
                out << z.exponents[i].str();
              }
              out << ")\n";
            }
          }
        }
      } else {
        FGPuiseux monoid = normalize(gens, config.caps);
        body["atoms"] = json_io::rational_list_value(monoid.atoms);
        if (*lengths) {
          LengthSet result = length_set(monoid, x, config.caps);
          if (json) {
            body["lengths"] = json_io::length_set_value(result);
            emit(body);
          } else {
            out << result.str() << "\n";
          }
        } else {
          auto zs = factorizations(monoid, x, config.caps);
          if (json) {
            Json arr = Json::array();
            for (const auto& z : zs) arr.push_back(json_io::factorization_value(z));
            body["factorizations"] = arr;
            emit(body);
          } else {
            for (const auto& z : zs) {
              out << "(";
              for (std::size_t i = 0; i < z.exponents.size(); ++i) {
                if (i) out << ", ";
                out << z.exponents[i].str();
              }
              out << ")\n";
            }
          }
        }
      }
      return 0;
    }

    if (*atoms_cmd) {
      std::vector<Rational> gens = detail::parse_rational_list(gens_arg);
      if (detail::all_integers(gens)) {
        std::vector<Int> int_gens;
        for (const Rational& g : gens) int_gens.push_back(g.numerator());
        IntSubmonoid monoid = minimalize(int_gens, config.caps);
        if (json) {
          Json body;
          body["atoms"] = json_io::int_list_value(monoid.atoms);
          emit(body);
        } else {
          std::string line;
          for (std::size_t i = 0; i < monoid.atoms.size(); ++i) {
            if (i) line += ", ";
            line += monoid.atoms[i].str();
          }
          out << line << "\n";
        }
      } else {
        FGPuiseux monoid = normalize(gens, config.caps);
        if (json) {
          Json body;
          body["atoms"] = json_io::rational_list_value(monoid.atoms);
          emit(body);
        } else {
          out << detail::join_rationals(monoid.atoms) << "\n";
        }
      }
      return 0;
    }

    if (*scale_cmd) {
      FGPuiseux monoid = normalize(detail::parse_rational_list(monoid_arg),
                                   config.caps);
      Rational q = Rational::parse(by_arg);
      FGPuiseux scaled = scale(monoid, q);
      if (json) {
        Json body;
        body["by"] = json_io::rational_value(q);
        body["atoms"] = json_io::rational_list_value(scaled.atoms);
        emit(body);
      } else {
        out << detail::join_rationals(scaled.atoms) << "\n";
      }
      return 0;
    }

    if (*iso) {
      FGPuiseux a = normalize(detail::parse_rational_list(m1_arg), config.caps);
      FGPuiseux b = normalize(detail::parse_rational_list(m2_arg), config.caps);
      std::optional<Rational> factor = isomorphism_factor(a, b);
      if (json) {
        Json body;
        body["factor"] = factor ? Json(factor->str_canonical()) : Json(nullptr);
        emit(body);
      } else {
        out << (factor ? factor->str() : std::string("none")) << "\n";
      }
      return 0;
    }

    if (*construct) {
      StagedMonoid monoid =
          *construct_full
              ? build_full_ssl(stages_arg, detail::parse_prime_pool(pool_arg),
                               config.bounds, config.caps)
              : build_non_two(stages_arg, config.caps);
      Json body;
      body["kind"] = staged_kind_name(monoid.kind());
      body["prime_pool"] = monoid.pool().describe();
      body["stages"] = json_io::stage_dump_value(monoid, stages_arg);
      emit(body);
      return 0;
    }

    if (*witness) {
      FGPuiseux monoid = normalize(detail::parse_rational_list(monoid_arg),
                                   config.caps);
      WitnessTwo w = witness_length_two(monoid, config.caps);
      if (json) {
        Json body;
        body["x"] = json_io::rational_value(w.x);
        body["lengths"] = json_io::length_set_value(w.certificate);
        emit(body);
      } else {
        out << "x = " << w.x.str() << ", lengths = " << w.certificate.str()
            << "\n";
      }
      return 0;
    }

    if (*realize_cmd) {
      LengthSet target = detail::parse_int_set(set_arg);
      RealizeOutcome outcome = realize(target, config.bounds, config.caps);
      Json body;
      if (outcome.result) {
        body["found"] = true;
        body["realization"] = json_io::realization_value(*outcome.result);
      } else {
        body["found"] = false;
        body["not_found"]["bounds"]["max_atoms"] = outcome.bounds_searched.max_atoms;
        body["not_found"]["bounds"]["max_atom_value"] = outcome.bounds_searched.max_atom_value;
        body["not_found"]["bounds"]["max_element"] = outcome.bounds_searched.max_element;
      }
      if (json) {
        emit(body);
      } else if (outcome.result) {
        out << "atoms = [";
        const auto& atoms = outcome.result->monoid.atoms;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
          if (i) out << ", ";
          out << atoms[i].str();
        }
        out << "], element = " << outcome.result->element.str()
            << ", lengths = " << outcome.result->verified_set.str() << "\n";
      } else {
        out << "not found within bounds ("
            << outcome.bounds_searched.describe() << ")\n";
      }
      return 0;
    }

    if (*goldbach_cmd) {
      GoldbachReport report =
          verify_goldbach_theorem(bound_arg, check_l3, config.caps);
      Json body = json_io::goldbach_report_value(report);
      emit(body);
      return 0;
    }

    if (*verify) {
      std::vector<std::string> violations;
      if (*verify_full) {
        StagedMonoid monoid =
            build_full_ssl(stages_arg, detail::parse_prime_pool(pool_arg),
                           config.bounds, config.caps);
        violations = audit_full_ssl(monoid, stages_arg, config.caps);
      } else {
        StagedMonoid monoid = build_non_two(stages_arg, config.caps);
        violations = audit_non_two(monoid, stages_arg, config.caps);
      }
      if (json) {
        Json body;
        body["ok"] = violations.empty();
        body["violations"] = violations;
        emit(body);
      } else {
        if (violations.empty()) {
          out << "ok: all audits passed\n";
        } else {
          for (const std::string& v : violations) out << "violation: " << v << "\n";
        }
      }
      return violations.empty() ? 0 : 1;
    }
  } catch (const ResourceError& e) {
    emit_error("resource", e.what(), e.cap());
    return 4;
  } catch (const StateError& e) {
    emit_error("state", e.what(), std::nullopt);
    return 3;
  } catch (const std::domain_error& e) {
    emit_error("domain", e.what(), std::nullopt);
    return 3;
  } catch (const std::exception& e) {
    emit_error("internal", e.what(), std::nullopt);
    return 3;
  }
  emit_error("usage", "no subcommand", std::nullopt);
  return 2;
}

}  // namespace puiseux::cli
