#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvdyn/errors.hpp"
#include "mvdyn/formula.hpp"
#include "mvdyn/semantics.hpp"

namespace mvdyn {

using PartialSubstitution = std::vector<std::pair<std::size_t, Formula>>;

struct Justification {
  enum Kind { Axiom, Hypothesis, MP, Subst } kind = Axiom;
  std::size_t hyp = 0;           // index into the hypotheses (0-based)
  std::size_t k = 0, m = 0;      // 1-based line numbers; Subst uses k only
  PartialSubstitution sigma;     // Subst: variables not listed stay fixed

  static Justification axiom() { return {}; }
  static Justification hypothesis(std::size_t i) { return {Hypothesis, i, 0, 0, {}}; }
  static Justification mp(std::size_t k, std::size_t m) { return {MP, 0, k, m, {}}; }
  static Justification subst(std::size_t k, PartialSubstitution s) { return {Subst, 0, k, 0, std::move(s)}; }
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct Proof {
  std::vector<Formula> hypotheses;
  std::vector<ProofLine> lines;
};

enum class Logic { MV, Product, Godel, Boole };
Logic parse_logic(std::string_view s);  // "mv"/"luk", "product", "godel", "boole"
std::string logic_name(Logic l);
Semantics logic_semantics(Logic l);

struct AxiomSet {
  Logic logic = Logic::MV;
  std::vector<Formula> schemas;
  bool strict = false;      // true: axiom lines must equal a schema verbatim
  bool use_oracle = true;   // also accept lines the logic's tautology oracle proves
};

AxiomSet builtin_axioms(Logic logic);

// Binds schema variables so that the schema equals f modulo desugaring.
std::optional<PartialSubstitution> match_schema(const Formula& schema, const Formula& f);

struct ProofVerdict {
  bool valid = true;
  std::size_t line = 0;  // 1-based line of the first failure
  std::string reason;
};

ProofVerdict check_proof(const Proof& p, const AxiomSet& axioms);

struct Consequence {
  enum Kind { Yes, No, Unknown } kind = Unknown;
  std::size_t power = 0;  // Yes: (d_1 * ... * d_n)^power <= r
  Point countermodel;     // No: every hypothesis is 1 here and r is not

  std::string name() const;
};

inline constexpr std::size_t kDefaultStarPowerBound = 64;

Consequence mp_consequence(const std::vector<Formula>& delta, const Formula& r, const Semantics& sem,
                           std::size_t star_power_bound = kDefaultStarPowerBound);

// JSON lines, one step per line:
//   {"formula": "...", "just": "axiom" | {"hyp": i} | {"mp": [k, m]} |
//    {"subst": {"line": k, "sigma": {"x0": "..."}}}}
// An optional first line {"hypotheses": ["...", ...]} lists the hypotheses;
// otherwise hypothesis i is the formula of the first {"hyp": i} line.
struct MalformedProof : DomainError {
  using DomainError::DomainError;
};
Proof read_proof(std::istream& in);
std::string write_proof(const Proof& p);

}  // namespace mvdyn
