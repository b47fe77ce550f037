#include <set>

#include "doctest.h"
#include "mvdyn/errors.hpp"
#include "mvdyn/json_io.hpp"
#include "mvdyn/parser.hpp"
#include "mvdyn/pwl.hpp"
#include "mvdyn/semantics.hpp"
#include "random.hpp"

using namespace mvdyn;

namespace {

Rational q(long n, long d) { return Rational(Integer(n), Integer(d)); }
Formula P(const char* s) { return parse_formula(s); }

std::set<Rational> breakpoints(const PwlFunction& f) {
  std::set<Rational> s;
  for (const auto& v : f.complex.vertices) s.insert(v[0]);
  return s;
}

CellComplex square_diagonal(bool anti) {
  CellComplex c;
  c.dim = 2;
  c.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  if (anti) c.cells = {{0, 1, 3}, {1, 2, 3}};
  else c.cells = {{0, 1, 2}, {0, 2, 3}};
  return c;
}

}  // namespace

TEST_CASE("tent compiles to two pieces") {
  PwlFunction t = simplify_1d(pwl_from_formula(P("(x0 & !x0) (+) (x0 & !x0)"), 1));
  CHECK(t.complex.size() == 2);
  CHECK(breakpoints(t) == std::set<Rational>{0, q(1, 2), 1});
  CHECK(pwl_eval(t, {q(1, 4)}) == q(1, 2));
  CHECK(pwl_eval(t, {q(3, 4)}) == q(1, 2));
  for (std::size_t k = 0; k < t.complex.size(); ++k) {
    Point c = t.complex.centroid(k);
    if (c[0] < q(1, 2)) CHECK(t.pieces[k] == AffinePiece{{2}, 0});
    else CHECK(t.pieces[k] == AffinePiece{{-2}, 2});
  }
}

TEST_CASE("constants compile to one piece") {
  PwlFunction one = pwl_from_formula(Formula::one(), 2);
  CHECK(pwl_problem(one).empty());
  std::set<std::pair<std::vector<long>, long>> pieces;
  for (const auto& p : one.pieces) CHECK(p == AffinePiece{{0, 0}, 1});
  CHECK_THROWS_AS(pwl_from_formula(P("x2"), 2), DomainError);
  CHECK_THROWS_AS(pwl_from_formula(P("x0"), 3), DomainError);
}

TEST_CASE("negation joined with the tent has three pieces") {
  PwlFunction f = simplify_1d(pwl_from_formula(P("!x0 | ((x0 & !x0) (+) (x0 & !x0))"), 1));
  CHECK(f.complex.size() == 3);
  CHECK(breakpoints(f) == std::set<Rational>{0, q(1, 3), q(1, 2), 1});
  CHECK(pwl_eval(f, {q(1, 6)}) == q(5, 6));
  CHECK(pwl_eval(f, {q(5, 12)}) == q(5, 6));
  CHECK(pwl_eval(f, {q(3, 4)}) == q(1, 2));
}

TEST_CASE("the three-piece integral matches the antiderivative oracle") {
  PwlFunction f = pwl_from_formula(P("!x0 | ((x0 & !x0) (+) (x0 & !x0))"), 1);
  // F1 = x - x^2/2 on [0,1/3], F2 = x^2 on [1/3,1/2], F3 = 2x - x^2 on [1/2,1]
  auto F1 = [](Rational x) { return x - x * x / Rational(2); };
  auto F2 = [](Rational x) { return x * x; };
  auto F3 = [](Rational x) { return Rational(2) * x - x * x; };
  Rational oracle = (F1(q(1, 3)) - F1(0)) + (F2(q(1, 2)) - F2(q(1, 3))) + (F3(1) - F3(q(1, 2)));
  CHECK(oracle == q(2, 3));
  CHECK(pwl_integral(f, Box::unit(1)).value == oracle);
}

TEST_CASE("combine examples") {
  PwlFunction x = PwlFunction::coordinate(1, 0);
  PwlFunction n = pwl_combine(PwlOp::Neg, x);
  CHECK(n.complex == x.complex);
  CHECK(n.pieces[0] == AffinePiece{{-1}, 1});
  PwlFunction d = simplify_1d(pwl_combine(PwlOp::OPlus, x, x));
  CHECK(breakpoints(d) == std::set<Rational>{0, q(1, 2), 1});
  CHECK(pwl_eval(d, {q(1, 4)}) == q(1, 2));
  CHECK(pwl_eval(d, {q(3, 4)}) == 1);
  PwlFunction m = simplify_1d(pwl_combine(PwlOp::Min, x, n));
  CHECK(breakpoints(m) == std::set<Rational>{0, q(1, 2), 1});
  CHECK(pwl_eval(m, {q(3, 4)}) == q(1, 4));
  CHECK_THROWS_AS(pwl_combine(PwlOp::Min, x, PwlFunction::coordinate(2, 0)), DomainError);
  CHECK_THROWS_AS(pwl_combine(PwlOp::Min, x), DomainError);
  CHECK_THROWS_AS(pwl_combine(PwlOp::Neg, x, &x), DomainError);
}

TEST_CASE("common refinement") {
  CellComplex a, b;
  a.dim = b.dim = 1;
  a.vertices = {{0}, {q(1, 2)}, {1}};
  a.cells = {{0, 1}, {1, 2}};
  b.vertices = {{0}, {q(1, 3)}, {1}};
  b.cells = {{0, 1}, {1, 2}};
  CellComplex r = common_refinement(a, b);
  std::set<Rational> bp;
  for (const auto& v : r.vertices) bp.insert(v[0]);
  CHECK(bp == std::set<Rational>{0, q(1, 3), q(1, 2), 1});
  CHECK(r.size() == 3);

  CellComplex s = square_diagonal(false);
  CHECK(common_refinement(s, s).size() == 2);

  CellComplex x = common_refinement(square_diagonal(false), square_diagonal(true));
  CHECK(complex_problem(x).empty());
  CHECK(x.size() == 4);
  bool center = false;
  for (const auto& v : x.vertices) center |= v == Point{q(1, 2), q(1, 2)};
  CHECK(center);
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(x.measure(k) == q(1, 4));

  Refinement rf = refine(square_diagonal(false), square_diagonal(true));
  for (std::size_t k = 0; k < rf.complex.size(); ++k) {
    Point c = rf.complex.centroid(k);
    CHECK(square_diagonal(false).contains(rf.from_a[k], c));
    CHECK(square_diagonal(true).contains(rf.from_b[k], c));
  }
}

TEST_CASE("complex validation catches defects") {
  CellComplex c = square_diagonal(false);
  CHECK(complex_problem(c).empty());
  c.cells.pop_back();
  CHECK(!complex_problem(c).empty());
  CellComplex d = square_diagonal(false);
  d.cells.push_back({0, 1, 2});
  CHECK(!complex_problem(d).empty());
  CellComplex e;
  e.dim = 1;
  e.vertices = {{0}, {q(1, 2)}, {1}};
  e.cells = {{0, 1}};
  CHECK(!complex_problem(e).empty());
  CellComplex t = square_diagonal(false);
  t.vertices.push_back({q(1, 2), q(1, 2)});  // lies inside the diagonal edge
  t.cells = {{0, 1, 4}, {1, 2, 4}, {0, 2, 3}};
  CHECK(!complex_problem(t).empty());
}

TEST_CASE("validation of PWL invariants") {
  PwlFunction f = PwlFunction::coordinate(1, 0);
  CHECK(pwl_problem(f).empty());
  f.pieces[0] = AffinePiece{{2}, 0};
  CHECK(!pwl_problem(f).empty());  // leaves [0,1]
  PwlFunction g;
  g.complex.dim = 1;
  g.complex.vertices = {{0}, {q(1, 2)}, {1}};
  g.complex.cells = {{0, 1}, {1, 2}};
  g.pieces = {AffinePiece{{1}, 0}, AffinePiece{{0}, 1}};
  CHECK(!pwl_problem(g).empty());  // discontinuous at 1/2
}

TEST_CASE("minimum value and equality") {
  MinValue one = pwl_min_value(PwlFunction::constant(1, 1));
  CHECK(one.value == 1);
  MinValue t = pwl_min_value(pwl_from_formula(P("(x0 & !x0) (+) (x0 & !x0)"), 1));
  CHECK(t.value == 0);
  CHECK((t.witness == Point{0} || t.witness == Point{1}));
  CHECK(pwl_min_value(pwl_from_formula(P("!!x0 -> x0"), 1)).value == 1);
  CHECK(pwl_equal(pwl_from_formula(P("x0 & x1"), 2), pwl_from_formula(P("x1 & x0"), 2)));
  CHECK(!pwl_equal(pwl_from_formula(P("x0"), 1), pwl_from_formula(P("x0 (+) x0"), 1)));
  CHECK(pwl_equal(pwl_from_formula(P("!!x0"), 1), pwl_from_formula(P("x0"), 1)));
  CHECK(!pwl_equal(pwl_from_formula(P("x0 * x1"), 2), pwl_from_formula(P("x0 & x1"), 2)));
}

TEST_CASE("semantic faithfulness on random formulas") {
  testing::Gen gen(17);
  for (int i = 0; i < 120; ++i) {
    std::size_t vars = gen.coin() ? 2 : 1;
    Formula f = gen.formula(vars, 5);
    PwlFunction p = pwl_from_formula(f, static_cast<int>(vars));
    REQUIRE(pwl_problem(p).empty());
    for (int j = 0; j < 10; ++j) {
      Point pt = gen.point(vars, 12);
      CHECK(pwl_eval(p, pt) == eval(f, Semantics::lukasiewicz(), pt));
    }
  }
}

TEST_CASE("2-D simplification keeps the function") {
  testing::Gen gen(29);
  for (int i = 0; i < 40; ++i) {
    Formula f = gen.formula(2, 4);
    PwlFunction a = pwl_from_formula(f, 2);
    PwlFunction s = simplify_2d(a);
    CHECK(pwl_problem(s).empty());
    CHECK(s.complex.size() <= a.complex.size());
    CHECK(pwl_equal(a, s));
  }
  // a single affine function collapses to the two-triangle square
  PwlFunction x = pwl_from_formula(P("x0 & (x1 | 1)"), 2);
  CHECK(x.complex.size() == 2);
}

TEST_CASE("integrals") {
  CHECK(pwl_integral(PwlFunction::coordinate(1, 0), Box::unit(1)).value == q(1, 2));
  PwlFunction tent = pwl_from_formula(P("(x0 & !x0) (+) (x0 & !x0)"), 1);
  CHECK(pwl_integral(tent, Box::unit(1)).value == q(1, 2));
  CHECK(pwl_integral(tent, Box::parse("0:1/4")).value == q(1, 16));
  PwlFunction xy = pwl_from_formula(P("x0 * x1"), 2);
  CHECK(pwl_integral(xy, Box::unit(2)).value == q(1, 6));
  CHECK(pwl_integral(pwl_from_formula(P("x0 & x1"), 2), Box::unit(2)).value == q(1, 3));
  Integral z = pwl_integral(tent, Box::parse("1/3:1/3"));
  CHECK(z.degenerate);
  CHECK(z.value == 0);
  CHECK(pwl_integral(pwl_from_formula(Formula::zero(), 2), Box::unit(2)).value == 0);
}

TEST_CASE("integrals are additive and monotone") {
  testing::Gen gen(41);
  for (int i = 0; i < 30; ++i) {
    Formula f = gen.formula(2, 4);
    PwlFunction p = pwl_from_formula(f, 2);
    Rational cut = gen.unit_rational(7);
    Box left{{{0, cut}, {0, 1}}}, right{{{cut, 1}, {0, 1}}};
    CHECK(pwl_integral(p, left).value + pwl_integral(p, right).value == pwl_integral(p, Box::unit(2)).value);
    PwlFunction weaker = pwl_from_formula(conj(f, gen.formula(2, 3)), 2);
    CHECK(pwl_integral(weaker, Box::unit(2)).value <= pwl_integral(p, Box::unit(2)).value);
  }
}

TEST_CASE("1-D synthesis round trip") {
  CHECK(pwl_to_formula_1d(PwlFunction::coordinate(1, 0)) == Formula::var(0));
  PwlFunction tent = pwl_from_formula(P("(x0 & !x0) (+) (x0 & !x0)"), 1);
  CHECK(pwl_equal(pwl_from_formula(pwl_to_formula_1d(tent), 1), tent));
  PwlFunction zero = PwlFunction::constant(1, 0);
  CHECK(pwl_equal(pwl_from_formula(pwl_to_formula_1d(zero), 1), zero));
  testing::Gen gen(23);
  for (int i = 0; i < 60; ++i) {
    PwlFunction f = gen.pwl_1d(5);
    CHECK(pwl_equal(pwl_from_formula(pwl_to_formula_1d(f), 1), f));
  }
  CHECK_THROWS_AS(pwl_to_formula_1d(PwlFunction::coordinate(2, 0)), DomainError);
}

TEST_CASE("clamped affine formulas") {
  testing::Gen gen(7);
  for (int i = 0; i < 40; ++i) {
    std::vector<Integer> a{Integer(gen.uniform(-4, 4)), Integer(gen.uniform(-4, 4))};
    Integer b(gen.uniform(-4, 5));
    Formula f = clamped_affine_formula(a, b);
    for (int j = 0; j < 8; ++j) {
      Point p = gen.point(2, 9);
      Rational v = Rational(a[0]) * p[0] + Rational(a[1]) * p[1] + Rational(b);
      Point full = p;
      full.resize(std::max<std::size_t>(2, f.arity()), Rational(0));
      CHECK(eval(f, Semantics::lukasiewicz(), full) == rmin(rmax(v, 0), 1));
    }
  }
}

TEST_CASE("2-D lattice synthesis round trip") {
  testing::Gen gen(31);
  for (int i = 0; i < 12; ++i) {
    PwlFunction f = pwl_from_formula(gen.formula(2, 3), 2);
    CHECK(pwl_equal(pwl_from_formula(lattice_formula(f), 2), f));
  }
}

TEST_CASE("affine map from a simplex pair") {
  std::vector<Point> src{{q(1, 4), q(1, 4)}, {1, 0}, {q(1, 2), q(1, 4)}};
  std::vector<Point> dst{{q(1, 2), q(1, 4)}, {1, 0}, {q(1, 4), q(1, 2)}};
  RationalAffineMap m = affine_from_simplex_pair(src, dst);
  CHECK(m.integral());
  CHECK(m.A == std::vector<std::vector<Rational>>{{-1, -5}, {1, 4}});
  CHECK(m.B == std::vector<Rational>{2, -1});

  RationalAffineMap id = affine_from_simplex_pair(src, src);
  CHECK(id.A == std::vector<std::vector<Rational>>{{1, 0}, {0, 1}});
  CHECK(id.B == std::vector<Rational>{0, 0});

  // swapping the first two vertices of the unit triangle: solved by hand,
  // A(1,0) + B = (0,0), A(0,0) + B = (1,0), A(0,1) + B = (0,1)
  std::vector<Point> u{{0, 0}, {1, 0}, {0, 1}}, w{{1, 0}, {0, 0}, {0, 1}};
  RationalAffineMap s = affine_from_simplex_pair(u, w);
  CHECK(s.A == std::vector<std::vector<Rational>>{{-1, -1}, {0, 1}});
  CHECK(s.B == std::vector<Rational>{1, 0});
  for (std::size_t i = 0; i < 3; ++i) CHECK(s.apply(u[i]) == w[i]);

  std::vector<Point> flat{{0, 0}, {q(1, 2), q(1, 2)}, {1, 1}};
  CHECK_THROWS_AS(affine_from_simplex_pair(flat, u), DomainError);
  std::vector<Point> half{{0, 0}, {1, 0}, {0, 1}}, img{{0, 0}, {q(1, 2), 0}, {0, 1}};
  CHECK(!affine_from_simplex_pair(half, img).integral());
}

TEST_CASE("PWL JSON round trip") {
  PwlFunction f = pwl_from_formula(P("x0 (+) (x1 * !x0)"), 2);
  Json j = pwl_json(f);
  PwlFunction g = pwl_from_json(Json::parse(j.dump()));
  CHECK(g.complex == f.complex);
  CHECK(g.pieces == f.pieces);
  Json bad = j;
  bad["pieces"][0]["b"] = 7;
  CHECK_THROWS_AS(pwl_from_json(bad), DomainError);
  CHECK(rational_from_json(Json::parse(R"(["3", "6"])")) == q(1, 2));
  CHECK(rational_from_json(Json("2/4")) == q(1, 2));
}

TEST_CASE("boxes") {
  Box b = Box::parse("1/4:1/2,0:1");
  CHECK(b.volume() == q(1, 4));
  CHECK(b.contains({q(1, 4), 0}));
  CHECK(!b.contains_open({q(1, 4), q(1, 2)}));
  CHECK(b.contains_open({q(1, 3), q(1, 2)}));
  CHECK_THROWS_AS(Box::parse("1/2:1/4"), DomainError);
  CHECK_THROWS_AS(Box::parse("0:2"), DomainError);
}
