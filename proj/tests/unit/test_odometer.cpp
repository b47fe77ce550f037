#include <set>

#include "doctest.h"
#include "mvdyn/deduction.hpp"
#include "mvdyn/errors.hpp"
#include "mvdyn/odometer.hpp"
#include "mvdyn/parser.hpp"
#include "mvdyn/semantics.hpp"
#include "random.hpp"

using namespace mvdyn;

namespace {

Formula P(const char* s) { return parse_formula(s); }

std::vector<int> bits(const TruthTable& t) {
  std::vector<int> out;
  for (std::size_t p = 0; p < t.size(); ++p) out.push_back(t.get(p));
  return out;
}

// Boolean value of f at valuation p through the general evaluator.
bool slow_value(const Formula& f, std::size_t n, std::size_t p) {
  Point v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Rational(long((p >> i) & 1u)));
  return eval(f, Semantics::boolean(), v) == 1;
}

}  // namespace

TEST_CASE("truth tables of basic formulas") {
  CHECK(bits(truth_table(P("x0 & x1"), 2)) == std::vector<int>{0, 0, 0, 1});
  CHECK(truth_table(P("x0 | !x0"), 1).all_ones());
  CHECK(bits(truth_table(sym_diff(Formula::var(0), Formula::var(1)), 2)) == std::vector<int>{0, 1, 1, 0});
  CHECK(bits(truth_table(P("x0 -> x1"), 2)) == std::vector<int>{1, 0, 1, 1});
  CHECK(truth_table(Formula::zero(), 3).all_zeros());
  CHECK_THROWS_AS(truth_table(P("x3"), 2), DomainError);
  CHECK_THROWS_AS(truth_table(P("x0"), 30), DomainError);
}

TEST_CASE("truth tables agree with the evaluator") {
  testing::Gen gen(13);
  for (std::size_t n : {1u, 3u, 7u}) {
    for (int i = 0; i < 30; ++i) {
      Formula f = gen.formula(n, 5);
      TruthTable t = truth_table(f, n);
      CHECK(t.count() <= t.size());
      for (std::size_t p = 0; p < t.size(); p += (t.size() > 64 ? 5 : 1)) CHECK(t.get(p) == slow_value(f, n, p));
    }
  }
}

TEST_CASE("hex round trip") {
  TruthTable t = truth_table(P("x0 & x1"), 2);
  CHECK(t.hex() == "8");
  CHECK(TruthTable::from_hex(2, "8") == t);
  TruthTable u = truth_table(P("x0"), 3);
  CHECK(u.hex() == "aa");
  testing::Gen gen(4);
  for (int i = 0; i < 20; ++i) {
    TruthTable r = truth_table(gen.formula(8, 6), 8);
    CHECK(TruthTable::from_hex(8, r.hex()) == r);
  }
  CHECK_THROWS_AS(TruthTable::from_hex(2, "zz"), DomainError);
}

TEST_CASE("odometer substitution") {
  CHECK(odometer_substitution(1).image(0) == P("!x0"));
  CHECK(odometer_substitution(2).image(1) == sym_diff(Formula::var(1), Formula::var(0)));
  CHECK(odometer_substitution(3).image(2) == sym_diff(Formula::var(2), P("x0 & x1")));
}

TEST_CASE("the odometer adds one") {
  BoolPermutation two = odometer_induced_permutation(2);
  CHECK(two.image == std::vector<std::uint32_t>{1, 2, 3, 0});
  CHECK(two.cycle_lengths() == std::vector<std::size_t>{4});
  BoolPermutation one = odometer_induced_permutation(1);
  CHECK(one.image == std::vector<std::uint32_t>{1, 0});
  for (std::size_t n = 1; n <= 10; ++n) {
    BoolPermutation s = odometer_induced_permutation(n);
    CHECK(s.cycle_lengths() == std::vector<std::size_t>{std::size_t(1) << n});
    for (std::size_t p = 0; p < s.image.size(); ++p) CHECK(s.image[p] == (p + 1) % s.image.size());
  }
}

TEST_CASE("other substitutions give other permutations") {
  BoolPermutation id = induced_permutation(Substitution::identity(3));
  CHECK(id.cycle_lengths() == std::vector<std::size_t>{1, 1, 1, 1, 1, 1, 1, 1});
  BoolPermutation sw = induced_permutation(Substitution::parse("x1; x0"));
  CHECK(sw.image == std::vector<std::uint32_t>{0, 2, 1, 3});
}

TEST_CASE("the odometer acts bijectively on truth tables") {
  for (std::size_t n = 1; n <= 3; ++n) {
    BoolPermutation s = odometer_induced_permutation(n);
    std::size_t tables = std::size_t(1) << (std::size_t(1) << n);
    std::set<std::string> images;
    for (std::size_t code = 0; code < tables; ++code) {
      TruthTable t(n);
      for (std::size_t p = 0; p < t.size(); ++p) t.set(p, (code >> p) & 1u);
      images.insert(table_map(s, t).hex());
    }
    CHECK(images.size() == tables);
  }
  testing::Gen gen(21);
  Substitution sigma = odometer_substitution(10);
  BoolPermutation s = odometer_induced_permutation(10);
  for (int i = 0; i < 10; ++i) {
    Formula f = gen.formula(10, 5);
    CHECK(table_map(s, truth_table(f, 10)) == truth_table(sigma.apply(f), 10));
  }
}

TEST_CASE("orbit conjunctions of non-tautologies vanish") {
  testing::Gen gen(77);
  for (std::size_t n = 1; n <= 6; ++n) {
    BoolPermutation s = odometer_induced_permutation(n);
    for (int i = 0; i < 20; ++i) {
      TruthTable t = truth_table(gen.formula(n, 4), n);
      if (t.all_ones()) continue;
      TruthTable acc = t, cur = t;
      for (std::size_t k = 1; k < t.size(); ++k) {
        cur = table_map(s, cur);
        acc = acc & cur;
      }
      CHECK(acc.all_zeros());
    }
  }
}

TEST_CASE("derivation from x0") {
  Proof p = derive_from_nontautology(P("x0"), Formula::zero(), 1);
  ProofVerdict v = check_proof(p, builtin_axioms(Logic::Boole));
  CHECK(v.valid);
  REQUIRE(p.lines.size() >= 2);
  CHECK(p.lines[0].formula == P("x0"));
  CHECK(p.lines[0].just.kind == Justification::Hypothesis);
  CHECK(p.lines[1].formula == P("!x0"));
  CHECK(p.lines[1].just.kind == Justification::Subst);
  CHECK(p.lines.back().formula == Formula::zero());
}

TEST_CASE("derivations pass the checker and use only the odometer") {
  Proof p = derive_from_nontautology(P("x0 & x1"), P("x1 -> x0"), 2);
  CHECK(check_proof(p, builtin_axioms(Logic::Boole)).valid);
  CHECK(p.lines.size() <= 4 * 4 + 4);
  CHECK(p.lines.back().formula == P("x1 -> x0"));

  testing::Gen gen(88);
  for (std::size_t n = 1; n <= 4; ++n) {
    Substitution sigma = odometer_substitution(n);
    for (int i = 0; i < 6; ++i) {
      Formula r = gen.formula(n, 3);
      if (truth_table(r, n).all_ones()) continue;
      Formula target = gen.formula(n, 3);
      Proof d = derive_from_nontautology(r, target, n);
      ProofVerdict v = check_proof(d, builtin_axioms(Logic::Boole));
      CHECK_MESSAGE(v.valid, v.reason);
      CHECK(d.lines.back().formula == target);
      for (const auto& line : d.lines) {
        if (line.just.kind == Justification::Hypothesis) CHECK(line.formula == r);
        if (line.just.kind != Justification::Subst) continue;
        CHECK(line.just.sigma.size() == n);
        for (const auto& [var, img] : line.just.sigma) CHECK(img == sigma.image(var));
      }
    }
  }
}

TEST_CASE("derivation errors") {
  CHECK_THROWS_AS(derive_from_nontautology(P("x0 | !x0"), Formula::zero(), 1), DomainError);
  CHECK_THROWS_AS(derive_from_nontautology(P("x0"), Formula::zero(), 12), DomainError);
  CHECK_THROWS_AS(derive_from_nontautology(P("x2"), Formula::zero(), 2), DomainError);
}
