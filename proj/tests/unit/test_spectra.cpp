#include <algorithm>

#include "doctest.h"
#include "mvdyn/algebra.hpp"
#include "mvdyn/errors.hpp"
#include "mvdyn/json_io.hpp"
#include "mvdyn/spectra.hpp"

using namespace mvdyn;

namespace {

std::vector<FiniteAlgebra> zoo() {
  return {boolean_algebra2(),
          finite_chain(2),
          finite_chain(3),
          finite_chain(5),
          finite_chain(3, TNorm::Godel),
          product_algebra(boolean_algebra2(), boolean_algebra2()),
          product_algebra(finite_chain(2), finite_chain(2)),
          product_algebra(boolean_algebra2(), finite_chain(3)),
          product_algebra(finite_chain(2, TNorm::Godel), finite_chain(2)),
          free_boolean(2)};
}

std::vector<std::size_t> idx(const FiniteAlgebra& a, std::initializer_list<const char*> names) {
  std::vector<std::size_t> out;
  for (const char* n : names) out.push_back(a.index_of(n));
  return out;
}

ElementSet set_of(const FiniteAlgebra& a, const std::vector<std::size_t>& xs) {
  ElementSet s = a.empty_set();
  for (auto x : xs) s.set(x);
  return s;
}

// All filters by brute force over subsets.
std::vector<ElementSet> all_filters(const FiniteAlgebra& a) {
  std::vector<ElementSet> out;
  for (std::size_t code = 0; code < (std::size_t(1) << a.size()); ++code) {
    ElementSet s(a.size(), code);
    if (is_filter(a, s)) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("finite chains") {
  FiniteAlgebra two = finite_chain(1);
  CHECK(two.size() == 2);
  CHECK(two.problem().empty());
  FiniteAlgebra l = finite_chain(2);
  std::size_t h = l.index_of("1/2");
  CHECK(l.star(h, h) == l.zero());
  CHECK(l.neg(h) == h);
  FiniteAlgebra g = finite_chain(2, TNorm::Godel);
  std::size_t gh = g.index_of("1/2");
  CHECK(g.star(gh, gh) == gh);
  CHECK(g.neg(gh) == g.zero());
  CHECK(is_chain(l));
  CHECK(!is_chain(product_algebra(two, two)));
}

TEST_CASE("constructed algebras satisfy the invariants") {
  for (const auto& a : zoo()) {
    CHECK(a.problem().empty());
    // residuation c*a <= b iff c <= a->b, over all triples
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < a.size(); ++y) {
        for (std::size_t z = 0; z < a.size(); ++z) CHECK(a.leq(a.star(z, x), y) == a.leq(z, a.impl(x, y)));
        // divisibility and prelinearity
        CHECK(a.meet(x, y) == a.star(x, a.impl(x, y)));
        CHECK(a.join(a.impl(x, y), a.impl(y, x)) == a.one());
        CHECK(a.leq(a.meet(x, y), x));
        CHECK(a.leq(x, a.join(x, y)));
      }
  }
  FiniteAlgebra broken(std::vector<std::string>{"0", "1"}, Table{{0, 0}, {0, 0}}, Table{{1, 1}, {0, 1}}, 0, 1);
  CHECK(!broken.problem().empty());
}

TEST_CASE("products and subalgebras") {
  FiniteAlgebra four = product_algebra(boolean_algebra2(), boolean_algebra2());
  CHECK(four.size() == 4);
  CHECK(all_filters(four).size() == 4);
  FiniteAlgebra l4 = finite_chain(4);
  Subalgebra s = subalgebra_generated(l4, idx(l4, {"1/2"}));
  CHECK(s.algebra.size() == 3);
  std::vector<std::size_t> els = s.elements;
  std::sort(els.begin(), els.end());
  CHECK(els == idx(l4, {"0", "1/2", "1"}));
  Subalgebra e = subalgebra_generated(l4, {});
  CHECK(e.algebra.size() == 2);
  CHECK(e.algebra.problem().empty());
  CHECK_THROWS_AS(product_algebra(finite_chain(9), finite_chain(9)), DomainError);
}

TEST_CASE("filter enumeration") {
  FiniteAlgebra four = product_algebra(boolean_algebra2(), boolean_algebra2());
  FilterEnumeration e4 = enumerate_filters(four);
  CHECK(e4.filters.size() == 4);
  CHECK(e4.primes.size() == 2);
  CHECK(e4.maximals.size() == 2);
  CHECK(e4.primes == e4.maximals);

  FiniteAlgebra l3 = finite_chain(3);
  FilterEnumeration e3 = enumerate_filters(l3);
  CHECK(e3.filters.size() == 2);
  REQUIRE(e3.primes.size() == 1);
  CHECK(members(e3.primes[0]) == std::vector<std::size_t>{l3.one()});

  FilterEnumeration e2 = enumerate_filters(boolean_algebra2());
  CHECK(e2.filters.size() == 2);
  CHECK(e2.primes.size() == 1);

  CHECK_THROWS_AS(enumerate_filters(finite_chain(5), 4), DomainError);
}

TEST_CASE("filter enumeration matches brute force") {
  for (const auto& a : zoo()) {
    FilterEnumeration e = enumerate_filters(a);
    std::vector<ElementSet> brute = all_filters(a);
    std::sort(brute.begin(), brute.end());
    std::vector<ElementSet> got = e.filters;
    std::sort(got.begin(), got.end());
    CHECK(got == brute);
    for (const auto& m : e.maximals) CHECK(std::find(e.primes.begin(), e.primes.end(), m) != e.primes.end());
    for (const auto& p : e.primes) {
      std::vector<ElementSet> above;
      for (const auto& f : e.filters)
        if (p.is_subset_of(f)) above.push_back(f);
      for (const auto& x : above)
        for (const auto& y : above) CHECK((x.is_subset_of(y) || y.is_subset_of(x)));
    }
  }
  FiniteAlgebra fb = free_boolean(2);
  FilterEnumeration e = enumerate_filters(fb);
  CHECK(e.primes == e.maximals);
}

TEST_CASE("quotients") {
  for (const auto& a : zoo()) {
    for (const auto& f : enumerate_filters(a).filters) {
      Quotient q = quotient(a, f);
      CHECK(q.algebra.problem().empty());
      Homomorphism h{&a, &q.algebra, q.projection};
      CHECK(h.problem().empty());
      ElementSet kernel = a.empty_set();
      for (std::size_t x = 0; x < a.size(); ++x)
        if (q.projection[x] == q.algebra.one()) kernel.set(x);
      CHECK(kernel == f);
      CHECK(is_chain(q.algebra) == (is_prime_filter(a, f) || f == a.full_set()));
    }
    Quotient id = quotient(a, set_of(a, {a.one()}));
    CHECK(id.algebra.size() == a.size());
  }
}

TEST_CASE("prime filter clauses agree") {
  for (const auto& a : zoo()) {
    Lemma7Report r = lemma7_check(a);
    CHECK_MESSAGE(r.ok(), (r.discrepancies.empty() ? std::string() : r.discrepancies.front()));
    for (const auto& row : r.rows)
      for (bool c : row.clause) CHECK(c == row.clause[0]);
  }
  FiniteAlgebra ll = product_algebra(finite_chain(2), finite_chain(2));
  Lemma7Report r = lemma7_check(ll);
  std::size_t primes = 0;
  for (const auto& row : r.rows) primes += row.clause[0];
  CHECK(primes == 2);
  FilterEnumeration e = enumerate_filters(ll);
  for (const auto& p : e.primes) {
    // kernel of a projection: one coordinate forced to 1
    bool first = true, second = true;
    for (auto x : members(p)) {
      const std::string& n = ll.name(x);
      first &= n.rfind("(1,", 0) == 0;
      second &= n.size() > 2 && n.substr(n.size() - 3) == ",1)";
    }
    CHECK((first || second));
    CHECK(p.count() == 3);
  }
  FiniteAlgebra chain = finite_chain(5);
  for (const auto& row : lemma7_check(chain).rows) CHECK(row.clause[4]);
}

TEST_CASE("spectral spaces") {
  SpecSpace fb = spec_space(free_boolean(2));
  CHECK(fb.points.size() == 4);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) CHECK(fb.below[p][q] == (p == q));
  CHECK(spec_space(finite_chain(3)).points.size() == 1);
  SpecSpace mixed = spec_space(product_algebra(boolean_algebra2(), finite_chain(3)));
  CHECK(mixed.points.size() == 2);
  CHECK(!mixed.below[0][1]);
  CHECK(!mixed.below[1][0]);
  for (const auto& a : zoo()) {
    SpecSpace s = spec_space(a);
    CHECK(s.order_is_forest);
    CHECK(s.closures_ok);
    CHECK(s.basic.size() == a.size());
  }
  SpecSpace g = spec_space(finite_chain(3, TNorm::Godel));
  CHECK(g.points.size() == 3);
  CHECK(g.order_is_forest);
}

TEST_CASE("dual maps") {
  FiniteAlgebra two = boolean_algebra2();
  FiniteAlgebra four = product_algebra(two, two);
  SpecSpace s2 = spec_space(two), s4 = spec_space(four);

  std::vector<std::size_t> id_map(four.size());
  for (std::size_t x = 0; x < four.size(); ++x) id_map[x] = x;
  DualMap id = dual_map(Homomorphism{&four, &four, id_map}, s4, s4);
  CHECK(id.continuous);
  for (std::size_t p = 0; p < id.image.size(); ++p) CHECK(id.image[p] == p);

  Homomorphism diag{&two, &four, {four.index_of("(0,0)"), four.index_of("(1,1)")}};
  REQUIRE(diag.problem().empty());
  DualMap d = dual_map(diag, s2, s4);
  CHECK(d.continuous);
  CHECK(d.image == std::vector<std::size_t>{0, 0});

  // projection onto the first factor, then the diagonal: composition rule
  Homomorphism proj{&four, &two, {}};
  for (std::size_t x = 0; x < four.size(); ++x) proj.map.push_back(four.name(x)[1] == '1' ? two.one() : two.zero());
  REQUIRE(proj.problem().empty());
  std::vector<std::size_t> comp(two.size());
  for (std::size_t x = 0; x < two.size(); ++x) comp[x] = proj.map[diag.map[x]];
  Homomorphism pd{&two, &two, comp};
  DualMap dp = dual_map(proj, s4, s2), dd = dual_map(diag, s2, s4), dc = dual_map(pd, s2, s2);
  for (std::size_t p = 0; p < s2.points.size(); ++p) CHECK(dc.image[p] == dd.image[dp.image[p]]);

  Homomorphism bad{&two, &four, {four.index_of("(0,1)"), four.index_of("(1,1)")}};
  CHECK_THROWS_AS(dual_map(bad, s2, s4), DomainError);
}

TEST_CASE("duality") {
  DualityReport b = duality_check(product_algebra(boolean_algebra2(), boolean_algebra2()));
  CHECK(b.ok());
  CHECK(b.filter_count == 4);
  CHECK(b.open_count == 4);
  DualityReport l = duality_check(finite_chain(3));
  CHECK(l.ok());
  CHECK(l.filter_count == 2);
  CHECK(l.open_count == 2);
  DualityReport f = duality_check(free_boolean(2));
  CHECK(f.ok());
  CHECK(f.filter_count == 16);
  CHECK(f.open_count == 16);
  for (const auto& a : zoo()) CHECK(duality_check(a).ok());
}

TEST_CASE("algebra JSON round trip") {
  FiniteAlgebra a = product_algebra(finite_chain(2), boolean_algebra2());
  FiniteAlgebra b = algebra_from_json(Json::parse(algebra_json(a).dump()));
  CHECK(b.names() == a.names());
  CHECK(b.star_table() == a.star_table());
  CHECK(b.impl_table() == a.impl_table());
  Json bad = algebra_json(a);
  bad["star"][0][0] = 99;
  CHECK_THROWS_AS(algebra_from_json(bad), DomainError);
}
