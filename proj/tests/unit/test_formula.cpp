#include "doctest.h"
#include "mvdyn/errors.hpp"
#include "mvdyn/parser.hpp"
#include "mvdyn/semantics.hpp"
#include "mvdyn/substitution.hpp"
#include "mvdyn/tautology.hpp"
#include "random.hpp"

using namespace mvdyn;

namespace {

Rational q(long n, long d) { return Rational(Integer(n), Integer(d)); }
Formula P(const char* s) { return parse_formula(s); }
Formula x(std::size_t i) { return Formula::var(i); }

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(q(2, 6) == q(1, 3));
  CHECK(q(2, 6).denominator() == 3);
  CHECK(q(-3, -6) == q(1, 2));
  CHECK(q(1, -2).denominator() == 2);
  CHECK(Rational::parse("0.25") == q(1, 4));
  CHECK(Rational::parse("-7/14") == q(-1, 2));
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/"), DomainError);
  CHECK(parse_point("1/2, 1/3") == Point{q(1, 2), q(1, 3)});
}

TEST_CASE("parser builds the expected trees") {
  Formula f = P("x0 -> x1");
  CHECK(f.kind() == Kind::Impl);
  CHECK(f.lhs().identical(x(0)));
  CHECK(f.rhs().identical(x(1)));

  Formula g = P("!(!x0 (+) !x1)");
  CHECK(g.identical(neg(oplus(neg(x(0)), neg(x(1))))));

  // arrow is right associative; precedence ! > * > (+) > & > | > ->
  CHECK(P("x0 -> x1 -> x2").identical(impl(x(0), impl(x(1), x(2)))));
  CHECK(P("x0 | x1 & x2").identical(disj(x(0), conj(x(1), x(2)))));
  CHECK(P("x0 & x1 (+) x2").identical(conj(x(0), oplus(x(1), x(2)))));
  CHECK(P("x0 (+) x1 * x2").identical(oplus(x(0), star(x(1), x(2)))));
  CHECK(P("!x0 * x1").identical(star(neg(x(0)), x(1))));
  CHECK(P("  x12 ").identical(x(12)));
  CHECK(P("\xC2\xAC x0 \xE2\x8B\x86 x1 \xE2\x86\x92 0").identical(impl(star(neg(x(0)), x(1)), Formula::zero())));
}

TEST_CASE("parse errors report offset and expected tokens") {
  try {
    P("x0 ->");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(P("(x0"), ParseError);
  CHECK_THROWS_AS(P("x"), ParseError);
  CHECK_THROWS_AS(P("x0 x1"), ParseError);
  CHECK_THROWS_AS(P("x0 $ x1"), ParseError);
  CHECK_THROWS_AS(P(""), ParseError);
}

TEST_CASE("printer round trip on random formulas") {
  testing::Gen gen(11);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula(3, 5);
    CHECK(parse_formula(print_formula(f)).identical(f));
    CHECK(parse_formula(print_formula(f, PrintStyle::Unicode)).identical(f));
  }
  CHECK(print_formula(P("(x0 -> x1) -> x2")) == "(x0 -> x1) -> x2");
  CHECK(print_formula(P("x0 -> (x1 -> x2)")) == "x0 -> x1 -> x2");
}

TEST_CASE("equality is modulo desugaring") {
  CHECK(neg(x(0)) == impl(x(0), Formula::zero()));
  CHECK(conj(x(0), x(1)) == star(x(0), impl(x(0), x(1))));
  CHECK(oplus(x(0), x(1)) == impl(neg(x(0)), x(1)));
  CHECK(disj(x(0), x(1)) == disj(x(0), x(1)).desugar());
  CHECK(!(neg(x(0)) == x(0)));
  CHECK(!neg(x(0)).identical(impl(x(0), Formula::zero())));
  testing::Gen gen(5);
  for (int i = 0; i < 100; ++i) {
    Formula f = gen.formula(2, 4);
    CHECK(f == f.desugar());
  }
}

TEST_CASE("variables and arity") {
  Formula f = P("x3 * x1 -> x3");
  CHECK(f.variables() == std::vector<std::size_t>{1, 3});
  CHECK(f.arity() == 4);
  CHECK(P("0 -> 1").arity() == 0);
}

TEST_CASE("evaluation matches the t-norm tables") {
  Point ab{q(7, 10), q(5, 10)};
  CHECK(eval(P("x0 * x1"), Semantics::lukasiewicz(), ab) == q(2, 10));
  CHECK(eval(P("x0 -> x1"), Semantics::godel(), ab) == q(5, 10));
  CHECK(eval(P("x0 -> x1"), Semantics::product(), ab) == q(5, 7));
  CHECK(eval(P("!x0"), Semantics::lukasiewicz(), Point{q(3, 10)}) == q(7, 10));
  CHECK(eval(P("!x0"), Semantics::godel(), Point{q(3, 10)}) == 0);
  CHECK(eval(P("!x0"), Semantics::godel(), Point{Rational(0)}) == 1);
  CHECK(eval(P("x0 (+) x1"), Semantics::lukasiewicz(), ab) == 1);
  CHECK(eval(P("x0 * x1"), Semantics::product(), ab) == q(35, 100));
  CHECK(eval(P("x0 * x1"), Semantics::godel(), ab) == q(1, 2));
}

TEST_CASE("evaluation rejects bad points") {
  CHECK_THROWS_AS(eval(P("x1"), Semantics::godel(), Point{q(1, 2)}), DomainError);
  CHECK_THROWS_AS(eval(P("x0"), Semantics::godel(), Point{q(3, 2)}), DomainError);
  CHECK_THROWS_AS(eval(P("x0"), Semantics::finite_chain(2), Point{q(1, 3)}), DomainError);
  CHECK(eval(P("x0"), Semantics::finite_chain(2), Point{q(1, 2)}) == q(1, 2));
}

TEST_CASE("residuation and lattice laws on a grid") {
  auto grid = farey_values(6);
  for (auto sem : {Semantics::godel(), Semantics::product(), Semantics::lukasiewicz()}) {
    for (const auto& a : grid)
      for (const auto& b : grid) {
        Point p{a, b};
        CHECK(eval(P("x0 & x1"), sem, p) == rmin(a, b));
        CHECK(eval(P("x0 | x1"), sem, p) == rmax(a, b));
        CHECK((a <= b) == (eval(P("x0 -> x1"), sem, p) == 1));
        CHECK(eval(P("x0 * 0"), sem, p) == 0);
        Rational ab = sem.impl(a, b);
        for (const auto& c : grid) CHECK((sem.star(c, a) <= b) == (c <= ab));
      }
  }
}

TEST_CASE("finite chains are closed under their operations") {
  for (long m = 1; m <= 6; ++m)
    for (auto base : {TNorm::Lukasiewicz, TNorm::Godel}) {
      Semantics s = Semantics::finite_chain(m, base);
      auto c = s.carrier();
      CHECK(c.size() == static_cast<std::size_t>(m + 1));
      for (const auto& a : c)
        for (const auto& b : c) {
          CHECK(s.contains(s.star(a, b)));
          CHECK(s.contains(s.impl(a, b)));
        }
    }
  CHECK(Semantics::parse("chain:3:godel") == Semantics::finite_chain(3, TNorm::Godel));
  CHECK(Semantics::parse("boole") == Semantics::boolean());
  CHECK_THROWS_AS(Semantics::parse("nope"), DomainError);
}

TEST_CASE("substitution application") {
  Substitution s({x(0), star(x(3), x(2)), x(1), x(3)});
  CHECK(s.apply(P("x1 -> x2")).identical(P("(x3 * x2) -> x1")));
  CHECK(Substitution::identity(3).apply(P("x0 & x2")).identical(P("x0 & x2")));
  Substitution one({Formula::one()});
  Formula f = one.apply(P("!x0"));
  CHECK(eval(f, Semantics::lukasiewicz(), Point{}) == 0);
  CHECK_THROWS_AS(Substitution({x(2)}), DomainError);
  CHECK_THROWS_AS(s.apply(x(7)), DomainError);
}

TEST_CASE("substitution is a homomorphism and agrees semantically") {
  testing::Gen gen(3);
  for (int i = 0; i < 60; ++i) {
    Substitution s({gen.formula(2, 3), gen.formula(2, 3)});
    Formula r = gen.formula(2, 3), t = gen.formula(2, 3);
    CHECK(s.apply(star(r, t)).identical(star(s.apply(r), s.apply(t))));
    CHECK(s.apply(Formula::zero()).identical(Formula::zero()));
    CHECK(s.apply(Formula::one()).identical(Formula::one()));
    Point p = gen.point(2, 9);
    Point img{eval(s.image(0), Semantics::lukasiewicz(), p), eval(s.image(1), Semantics::lukasiewicz(), p)};
    CHECK(eval(s.apply(r), Semantics::lukasiewicz(), p) == eval(r, Semantics::lukasiewicz(), img));
  }
}

TEST_CASE("composition") {
  Substitution tent = tent_substitution();
  Substitution id = Substitution::identity(1);
  CHECK(compose_substitutions(tent, id).image(0) == tent.image(0));
  Substitution ff = compose_substitutions(flip_substitution(), flip_substitution());
  CHECK(identity_check(ff.image(0), x(0), Semantics::lukasiewicz(), TautMethod::exact_pwl()).kind ==
        Verdict::Tautology);
  Substitution tt = compose_substitutions(tent, tent);
  CHECK(eval(tt.image(0), Semantics::lukasiewicz(), Point{q(1, 8)}) == q(1, 2));
  CHECK(eval(tt.image(0), Semantics::lukasiewicz(), Point{q(1, 4)}) == 1);
  CHECK_THROWS_AS(compose_substitutions(tent, Substitution::identity(2)), DomainError);
  // associativity, checked pointwise
  Substitution a({P("x0 (+) x1"), P("!x0")}), b({P("x1"), P("x0 * x1")}), c({P("x0 & !x1"), P("x1 -> x0")});
  Substitution l = compose_substitutions(compose_substitutions(a, b), c);
  Substitution r = compose_substitutions(a, compose_substitutions(b, c));
  testing::Gen gen(8);
  for (int i = 0; i < 20; ++i) {
    Point p = gen.point(2, 7);
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(eval(l.image(k), Semantics::lukasiewicz(), p) == eval(r.image(k), Semantics::lukasiewicz(), p));
  }
}

TEST_CASE("named substitutions") {
  CHECK(named_substitution("tent").arity() == 1);
  CHECK(named_substitution("tent2").arity() == 2);
  CHECK(named_substitution("identity:3").arity() == 3);
  CHECK(named_substitution("x1; x0").image(0).identical(x(1)));
  CHECK(named_substitution("odometer:3").arity() == 3);
  CHECK_THROWS_AS(named_substitution("x0 ->"), ParseError);
}

TEST_CASE("tautology checking") {
  CHECK(tautology_check(P("x0 | !x0"), Semantics::boolean(), TautMethod::truth_table()).kind == Verdict::Tautology);
  CHECK(tautology_check(P("!!x0 -> x0"), Semantics::lukasiewicz(), TautMethod::exact_pwl()).kind ==
        Verdict::Tautology);
  Verdict v = tautology_check(P("x0 | !x0"), Semantics::lukasiewicz(), TautMethod::exact_pwl());
  CHECK(v.kind == Verdict::Countermodel);
  CHECK(v.point == Point{q(1, 2)});
  CHECK(v.value == q(1, 2));
  Verdict g = tautology_check(P("(!!x0 -> x0) & (x0 -> !!x0)"), Semantics::godel(), TautMethod::grid(10));
  CHECK(g.kind == Verdict::Countermodel);
  CHECK(eval(P("(!!x0 -> x0) & (x0 -> !!x0)"), Semantics::godel(), g.point) != 1);
  CHECK(tautology_check(P("x0 -> x0"), Semantics::godel(), TautMethod::grid(5)).kind == Verdict::Unknown);
  CHECK_THROWS_AS(tautology_check(P("x0"), Semantics::lukasiewicz(), TautMethod::truth_table()), DomainError);
  CHECK_THROWS_AS(tautology_check(P("x0"), Semantics::godel(), TautMethod::exact_pwl()), DomainError);
  CHECK_THROWS_AS(tautology_check(P("x0 & x1 & x2"), Semantics::lukasiewicz(), TautMethod::exact_pwl()),
                  DomainError);
  CHECK_THROWS_AS(tautology_check(P("x0 & x1 & x2"), Semantics::finite_chain(9), TautMethod::truth_table(), 100),
                  CapExceeded);
  // sparse variables are renamed for the exact method
  CHECK(tautology_check(P("x5 -> (x9 -> x5)"), Semantics::lukasiewicz(), TautMethod::exact_pwl()).kind ==
        Verdict::Tautology);
  Verdict s = tautology_check(P("x3 | !x3"), Semantics::lukasiewicz(), TautMethod::exact_pwl());
  CHECK(s.point.size() == 4);
  CHECK(s.point[3] == q(1, 2));
}

TEST_CASE("identity checking") {
  CHECK(identity_check(P("x0 & x1"), P("x1 & x0"), Semantics::lukasiewicz(), TautMethod::exact_pwl()).kind ==
        Verdict::Tautology);
  CHECK(identity_check(P("!!x0"), P("x0"), Semantics::godel(), TautMethod::grid(10)).kind == Verdict::Countermodel);
  CHECK(identity_check(P("x0 & x1 & x2"), P("x0 & x1 & x2"), Semantics::godel(), TautMethod::grid(2)).kind ==
        Verdict::Tautology);
}

TEST_CASE("countermodels are genuine on random formulas") {
  testing::Gen gen(21);
  for (int i = 0; i < 150; ++i) {
    Formula f = gen.formula(2, 4);
    Verdict v = tautology_check(f, Semantics::lukasiewicz(), TautMethod::exact_pwl());
    if (v.kind == Verdict::Countermodel) {
      Point p = v.point;
      p.resize(std::max<std::size_t>(p.size(), f.arity()), Rational(0));
      CHECK(eval(f, Semantics::lukasiewicz(), p) == v.value);
      CHECK(v.value != 1);
    } else {
      // a tautology has no falsifying grid point
      CHECK(tautology_check(f, Semantics::lukasiewicz(), TautMethod::grid(6)).kind == Verdict::Unknown);
    }
  }
}
