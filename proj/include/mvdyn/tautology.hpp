#pragma once

#include <string>
#include <string_view>

#include "mvdyn/formula.hpp"
#include "mvdyn/semantics.hpp"

namespace mvdyn {

struct TautMethod {
  enum Kind { TruthTable, ExactPwl, Grid } kind = TruthTable;
  long grid_bound = 10;

  static TautMethod truth_table() { return {TruthTable, 0}; }
  static TautMethod exact_pwl() { return {ExactPwl, 0}; }
  static TautMethod grid(long bound) { return {Grid, bound}; }
  // "truth-table", "exact-pwl", "grid" or "grid:<bound>"
  static TautMethod parse(std::string_view s);
};

struct Verdict {
  enum Kind { Tautology, Countermodel, Unknown } kind = Unknown;
  Point point;  // falsifying assignment for Countermodel (x_0..x_{arity-1})
  Rational value;  // formula value at point

  std::string name() const;
};

// Default budget of valuations for TruthTable/Grid enumeration.
inline constexpr std::size_t kDefaultEnumerationCap = 20'000'000;

Verdict tautology_check(const Formula& f, const Semantics& sem, TautMethod method,
                        std::size_t cap = kDefaultEnumerationCap);
Verdict identity_check(const Formula& r, const Formula& s, const Semantics& sem, TautMethod method,
                       std::size_t cap = kDefaultEnumerationCap);

// All rationals in [0,1] with denominator <= bound, ascending.
std::vector<Rational> farey_values(long bound);

}  // namespace mvdyn
