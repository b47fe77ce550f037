#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "mvdyn/dynamics.hpp"
#include "mvdyn/errors.hpp"
#include "mvdyn/parser.hpp"
#include "random.hpp"

using namespace mvdyn;

namespace {

Rational q(long n, long d) { return Rational(Integer(n), Integer(d)); }

const Rotation& rotation() {
  static const Rotation r = rotation_homeomorphism();
  return r;
}

bool divides(const Integer& a, const Integer& b) { return b % a == 0; }

// Random point whose denominator divides d.
Point point_with_den(testing::Gen& gen, std::size_t n, long d) {
  Point p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(q(gen.uniform(0, d), d));
  return p;
}

}  // namespace

TEST_CASE("induced maps") {
  InducedMap tent = induced_map(tent_substitution());
  REQUIRE(tent.pwl().has_value());
  CHECK(pwl_map_problem(*tent.pwl()).empty());
  CHECK(map_eval(tent, {q(1, 4)}) == Point{q(1, 2)});
  CHECK(map_eval(tent, {q(1, 2)}) == Point{1});
  CHECK(map_eval(tent, {q(3, 4)}) == Point{q(1, 2)});

  InducedMap id = induced_map(Substitution::identity(2));
  CHECK(map_eval(id, {q(1, 3), q(2, 7)}) == Point{q(1, 3), q(2, 7)});

  InducedMap flip = induced_map(flip_substitution());
  CHECK(map_eval(flip, {q(1, 5)}) == Point{q(4, 5)});

  CHECK_THROWS_AS(map_eval(tent, {q(3, 2)}), DomainError);
  CHECK_THROWS_AS(map_eval(tent, {q(1, 2), q(1, 2)}), DomainError);

  CHECK(!induced_map(named_substitution("odometer:3")).pwl().has_value());
}

TEST_CASE("formula and PWL evaluation agree") {
  testing::Gen gen(5);
  for (int i = 0; i < 30; ++i) {
    Substitution s({gen.formula(2, 4), gen.formula(2, 4)});
    InducedMap m = induced_map(s);
    REQUIRE(m.pwl().has_value());
    CHECK(pwl_map_problem(*m.pwl()).empty());
    for (int j = 0; j < 10; ++j) {
      Point p = gen.point(2, 11);
      CHECK(m(p) == m.pwl()->eval(p));
    }
  }
}

TEST_CASE("denominators") {
  CHECK(denominator({q(1, 2), q(1, 3)}) == 6);
  CHECK(denominator({0, 1}) == 1);
  CHECK(denominator({q(2, 6)}) == 3);
}

TEST_CASE("images never grow the denominator") {
  testing::Gen gen(8);
  for (int i = 0; i < 40; ++i) {
    Substitution s({gen.formula(2, 4), gen.formula(2, 4)});
    InducedMap m = induced_map(s);
    for (int j = 0; j < 10; ++j) {
      Point p = gen.point(2, 30);
      CHECK(divides(denominator(m(p)), denominator(p)));
    }
  }
}

TEST_CASE("orbits") {
  InducedMap tent = induced_map(tent_substitution());
  Orbit o = orbit(tent, {q(1, 5)}, 100);
  CHECK(o.cycle);
  CHECK(o.preperiod == 1);
  CHECK(o.period == 2);
  CHECK(o.points[0] == Point{q(1, 5)});
  CHECK(o.points[1] == Point{q(2, 5)});
  CHECK(o.points[2] == Point{q(4, 5)});
  CHECK(o.points[o.preperiod + o.period] == o.points[o.preperiod]);

  Orbit z = orbit(tent, {0}, 100);
  CHECK(z.cycle);
  CHECK(z.preperiod == 0);
  CHECK(z.period == 1);

  Orbit t = orbit(tent, {q(1, 7)}, 1);
  CHECK(!t.cycle);
  CHECK(t.max_steps == 1);

  testing::Gen gen(12);
  InducedMap tt = induced_map(tent_substitution(2));
  for (int i = 0; i < 25; ++i) {
    Point p = gen.point(2, 20);
    Integer d = denominator(p);
    std::size_t bound = (d.get_ui() + 1) * (d.get_ui() + 1);
    Orbit r = orbit(tt, p, bound);
    CHECK(r.cycle);
    CHECK(r.preperiod + r.period <= bound);
    for (const auto& den : r.denominators) CHECK(divides(den, d));
  }
}

TEST_CASE("reachability substitutions") {
  Substitution s = reachability_substitution({q(1, 3)}, {q(2, 3)});
  CHECK(map_eval(induced_map(s), {q(1, 3)}) == Point{q(2, 3)});
  CHECK(pwl_equal(pwl_from_formula(s.image(0), 1), pwl_from_formula(parse_formula("x0 (+) x0"), 1)));

  Substitution same = reachability_substitution({q(2, 5), q(1, 5)}, {q(2, 5), q(1, 5)});
  CHECK(map_eval(induced_map(same), {q(2, 5), q(1, 5)}) == Point{q(2, 5), q(1, 5)});

  CHECK_THROWS_AS(reachability_substitution({q(1, 2)}, {q(1, 3)}), DomainError);

  testing::Gen gen(99);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = gen.coin() ? 2 : 1;
    Point p = gen.point(n, 24);
    long d = denominator(p).get_si();
    std::vector<long> divisors;
    for (long k = 1; k <= d; ++k)
      if (d % k == 0) divisors.push_back(k);
    long e = divisors[gen.uniform(0, static_cast<long>(divisors.size()) - 1)];
    Point target = point_with_den(gen, n, e);
    Substitution r = reachability_substitution(p, target);
    CHECK(map_eval(induced_map(r), p) == target);
  }
}

TEST_CASE("full rational orbits") {
  CHECK(full_rational_orbit(1, 2) == std::vector<Point>{{0}, {q(1, 2)}, {1}});
  auto corners = full_rational_orbit(2, 1);
  CHECK(corners.size() == 4);
  auto six = full_rational_orbit(1, 6);
  CHECK(six.size() == 7);
  for (const auto& p : six)
    for (const auto& t : six)
      if (divides(denominator(t), denominator(p)))
        CHECK(map_eval(induced_map(reachability_substitution(p, t)), p) == t);
  CHECK_THROWS_AS(full_rational_orbit(3, 200, 1000), DomainError);

  auto grid = full_rational_orbit(2, 12);
  CHECK(grid.size() == 169);
  testing::Gen gen(3);
  for (int i = 0; i < 10; ++i) {
    InducedMap m = induced_map(Substitution({gen.formula(2, 4), gen.formula(2, 4)}));
    CHECK(closed_under(grid, m));
  }
}

TEST_CASE("rotation homeomorphism") {
  const Rotation& r = rotation();
  CHECK(pwl_map_problem(r.map).empty());
  InducedMap S = induced_map(r.sigma);
  Point p0{q(1, 4), q(1, 4)}, p1{q(1, 2), q(1, 4)}, p2{q(1, 4), q(1, 2)};
  CHECK(map_eval(S, p0) == p1);
  CHECK(map_eval(S, p1) == p2);
  CHECK(map_eval(S, p2) == p0);
  for (const auto& p : r.inner) CHECK(map_eval(S, map_eval(S, map_eval(S, p))) == p);
  for (const Point& c : std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}) CHECK(map_eval(S, c) == c);

  // the cell with vertices p0, (1,0), p1
  Point inside{(p0[0] + 1 + p1[0]) / 3, (p0[1] + 0 + p1[1]) / 3};
  auto cell = locate_cell(r.map.complex, inside);
  REQUIRE(cell.has_value());
  const AffineMapZ& a = r.map.pieces[*cell];
  CHECK(a.A == std::vector<std::vector<Integer>>{{-1, -5}, {1, 4}});
  CHECK(a.B == std::vector<Integer>{2, -1});

  for (std::size_t k = 0; k < r.map.complex.size(); ++k) {
    Point c = r.map.complex.centroid(k);
    CHECK(r.map.eval(c) == map_eval(S, c));
  }
}

TEST_CASE("homeomorphism validation") {
  HomeoReport rot = validate_homeomorphism(rotation().map);
  CHECK(rot.invertible);
  REQUIRE(rot.common_det.has_value());
  CHECK((*rot.common_det == 1 || *rot.common_det == -1));
  CHECK(rot.measure_preserving);
  CHECK(rot.image_measure == 1);

  HomeoReport tent = validate_homeomorphism(*induced_map(tent_substitution()).pwl());
  CHECK(!tent.invertible);
  CHECK(!tent.measure_preserving);

  HomeoReport id = validate_homeomorphism(*induced_map(Substitution::identity(2)).pwl());
  CHECK(id.invertible);
  CHECK(id.common_det == 1);
  CHECK(id.measure_preserving);

  HomeoReport flip = validate_homeomorphism(*induced_map(flip_substitution()).pwl());
  CHECK(flip.invertible);
  CHECK(flip.common_det == -1);
}

TEST_CASE("invertible 1-D substitutions are the identity or the flip") {
  testing::Gen gen(55);
  PwlFunction id = PwlFunction::coordinate(1, 0);
  PwlFunction fl = pwl_from_formula(parse_formula("!x0"), 1);
  int found = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula(1, 4);
    PwlMap m = *induced_map(Substitution({f})).pwl();
    if (!validate_homeomorphism(m).invertible) continue;
    ++found;
    PwlFunction c = m.component(0);
    CHECK((pwl_equal(c, id) || pwl_equal(c, fl)));
  }
  CHECK(found > 0);
}

TEST_CASE("measure-preserving maps keep the whole-cube average") {
  testing::Gen gen(61);
  const Rotation& r = rotation();
  for (int i = 0; i < 5; ++i) {
    Formula f = gen.formula(2, 3);
    Rational before = pwl_integral(pwl_from_formula(f, 2), Box::unit(2)).value;
    Rational after = pwl_integral(pwl_from_formula(r.sigma.apply(f), 2), Box::unit(2)).value;
    CHECK(before == after);
  }
}

TEST_CASE("differentials") {
  const PwlMap& rot = rotation().map;
  Point p{q(7, 12), q(1, 6)};  // centroid of the cell p0, (1,0), p1
  CHECK(tsujii_differential(rot, p, {1, 0}) == Point{-1, 1});
  CHECK(tsujii_differential(rot, p, {0, 0}) == Point{0, 0});

  PwlMap tent = *induced_map(tent_substitution()).pwl();
  CHECK(tsujii_differential(tent, {q(1, 2)}, {1}) == Point{-2});
  // (S(1/2 - h) - S(1/2)) / h = ((1 - 2h) - 1) / h
  CHECK(tsujii_differential(tent, {q(1, 2)}, {-1}) == Point{-2});
  CHECK(tsujii_differential(tent, {q(1, 4)}, {-1}) == Point{-2});
  CHECK_THROWS_AS(tsujii_differential(tent, {1}, {1}), DomainError);

  testing::Gen gen(71);
  for (int i = 0; i < 40; ++i) {
    Point x = gen.point(2, 9);
    Point v{gen.uniform(-3, 3), gen.uniform(-3, 3)};
    bool ok = true;
    for (std::size_t j = 0; j < 2; ++j) ok &= !((x[j] == 0 && v[j] < 0) || (x[j] == 1 && v[j] > 0));
    if (!ok) continue;
    Rational c = gen.unit_rational(5) + 1;
    Point cv{c * v[0], c * v[1]};
    Point a = tsujii_differential(rot, x, v), b = tsujii_differential(rot, x, cv);
    CHECK(b == Point{c * a[0], c * a[1]});
  }
}

TEST_CASE("box hitting") {
  InducedMap id = induced_map(Substitution::identity(1));
  auto whole = box_hitting_search(id, id, Box::unit(1), Box::unit(1), 3, 3, 8);
  REQUIRE(whole.has_value());
  CHECK(whole->h == 0);
  CHECK(whole->k == 0);

  InducedMap tent = induced_map(tent_substitution());
  auto hit = box_hitting_search(tent, id, Box::parse("0:1/8"), Box::parse("7/8:1"), 6, 0, 100);
  REQUIRE(hit.has_value());
  CHECK(hit->h <= 4);
  CHECK(hit->k == 0);
  Point w = hit->witness;
  CHECK(Box::parse("0:1/8").contains_open(w));
  for (std::size_t i = 0; i < hit->h; ++i) w = tent(w);
  CHECK(Box::parse("7/8:1").contains_open(w));

  CHECK(!box_hitting_search(id, id, Box::parse("0:1/4"), Box::parse("1/2:1"), 5, 5, 16).has_value());

  auto par = box_hitting_search(tent, tent, Box::parse("1/3:3/8"), Box::parse("0:1/16"), 10, 10, 1009, 4);
  auto seq = box_hitting_search(tent, tent, Box::parse("1/3:3/8"), Box::parse("0:1/16"), 10, 10, 1009, 1);
  REQUIRE(par.has_value());
  REQUIRE(seq.has_value());
  CHECK(par->h == seq->h);
  CHECK(par->k == seq->k);
  CHECK(par->witness == seq->witness);
}

TEST_CASE("empirical statistics") {
  InducedMap id = induced_map(Substitution::identity(1));
  Statistics s = empirical_statistics(id, {0.3}, 1000, 4, 1, 0);
  CHECK(s.frequency[1] == doctest::Approx(1.0));
  CHECK(s.max_discrepancy == doctest::Approx(0.75));

  InducedMap tent = induced_map(tent_substitution());
  Statistics t = empirical_statistics(tent, {0.1234567}, 1'000'000, 16, 7);
  CHECK(t.frequency.size() == 16);
  CHECK(std::accumulate(t.frequency.begin(), t.frequency.end(), 0.0) == doctest::Approx(1.0));
  CHECK(t.max_discrepancy < 0.02);

  Statistics a = empirical_statistics(tent, {0.1234567}, 10000, 16, 7);
  Statistics b = empirical_statistics(tent, {0.1234567}, 10000, 16, 7);
  CHECK(a.frequency == b.frequency);

  InducedMap tt = induced_map(tent_substitution(2));
  Statistics u = empirical_statistics(tt, {0.1234567, 0.7654321}, 1'000'000, 4, 7);
  CHECK(u.frequency.size() == 16);
  CHECK(u.max_discrepancy < 0.05);
}

TEST_CASE("average truth values") {
  Formula x = Formula::var(0);
  AverageTruth id = average_truth_value(x, 4, Substitution::identity(1), Box::parse("1/5:1/2"));
  for (const auto& v : id.sequence) CHECK(v == q(7, 20));

  AverageTruth whole = average_truth_value(x, 5, tent_substitution(), Box::unit(1));
  CHECK(whole.f_lambda == q(1, 2));
  for (const auto& v : whole.sequence) CHECK(v == q(1, 2));

  AverageTruth quarter = average_truth_value(x, 5, tent_substitution(), Box::parse("0:1/4"));
  CHECK(quarter.sequence == std::vector<Rational>{q(1, 8), q(1, 4), q(1, 2), q(1, 2), q(1, 2), q(1, 2)});

  CHECK_THROWS_AS(average_truth_value(x, 2, tent_substitution(), Box::parse("1/3:1/3")), DomainError);
  CHECK_THROWS_AS(average_truth_value(x, 2, named_substitution("odometer:3"), Box::unit(3)), DomainError);
}
