#include "mvdyn/spectra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mvdyn/errors.hpp"

namespace mvdyn {

namespace {

void check_cap(const FiniteAlgebra& a, std::size_t cap) {
  if (a.size() > cap)
    throw CapExceeded("algebra has " + std::to_string(a.size()) + " elements, cap is " + std::to_string(cap));
}

bool set_less(const ElementSet& x, const ElementSet& y) {
  if (x.count() != y.count()) return x.count() < y.count();
  return members(x) < members(y);
}

ElementSet singleton(const FiniteAlgebra& a, std::size_t x) {
  ElementSet s = a.empty_set();
  s.set(x);
  return s;
}

}  // namespace

bool is_prime_filter(const FiniteAlgebra& a, const ElementSet& f) {
  if (f.count() == a.size()) return false;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x; y < a.size(); ++y)
      if (f.test(a.join(x, y)) && !f.test(x) && !f.test(y)) return false;
  return true;
}

FilterEnumeration enumerate_filters(const FiniteAlgebra& a, std::size_t cap) {
  check_cap(a, cap);
  // every filter of a finite algebra is the up-set of its (idempotent) minimum
  std::vector<ElementSet> all;
  for (std::size_t x = 0; x < a.size(); ++x) all.push_back(filter_generated(a, singleton(a, x)));
  std::sort(all.begin(), all.end(), set_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  FilterEnumeration e;
  e.filters = all;
  for (const auto& f : all)
    if (is_prime_filter(a, f)) e.primes.push_back(f);
  for (const auto& f : all) {
    if (f.count() == a.size()) continue;
    bool maximal = true;
    for (const auto& g : all)
      if (g != f && g.count() < a.size() && f.is_subset_of(g)) maximal = false;
    if (maximal) e.maximals.push_back(f);
  }
  return e;
}

bool is_chain(const FiniteAlgebra& a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (!a.leq(x, y) && !a.leq(y, x)) return false;
  return true;
}

Quotient quotient(const FiniteAlgebra& a, const ElementSet& f) {
  std::size_t n = a.size();
  std::vector<std::size_t> cls(n, n);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] != n) continue;
    cls[x] = reps.size();
    for (std::size_t y = x + 1; y < n; ++y)
      if (cls[y] == n && f.test(a.impl(x, y)) && f.test(a.impl(y, x))) cls[y] = reps.size();
    reps.push_back(x);
  }
  std::size_t m = reps.size();
  Table star(m, std::vector<std::size_t>(m)), impl(m, std::vector<std::size_t>(m));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    std::string nm = "[";
    for (std::size_t x = 0; x < n; ++x)
      if (cls[x] == i) nm += (nm.size() > 1 ? " " : "") + a.name(x);
    names.push_back(nm + "]");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t s = cls[a.star(x, y)], t = cls[a.impl(x, y)];
      std::size_t i = cls[x], j = cls[y];
      if (x == reps[i] && y == reps[j]) {
        star[i][j] = s;
        impl[i][j] = t;
      } else if (star[i][j] != s || impl[i][j] != t) {
        throw DomainError("relation is not a congruence");
      }
    }
  return {FiniteAlgebra(std::move(names), std::move(star), std::move(impl), cls[a.zero()], cls[a.one()]), cls};
}

Lemma7Report lemma7_check(const FiniteAlgebra& a, std::size_t cap) {
  auto e = enumerate_filters(a, cap);
  Lemma7Report rep;
  const auto& F = e.filters;
  for (const auto& f : F) {
    if (f.count() == a.size()) continue;
    Lemma7Row row;
    row.filter = f;
    // (1) not the intersection of two strictly larger filters
    bool irreducible = true;
    for (const auto& g : F)
      for (const auto& h : F)
        if (f != g && f != h && f.is_subset_of(g) && f.is_subset_of(h) && (g & h) == f) irreducible = false;
    row.clause[0] = irreducible;
    // (2) quotient totally ordered: a->b in f or b->a in f
    bool prelinear = true;
    for (std::size_t x = 0; x < a.size() && prelinear; ++x)
      for (std::size_t y = 0; y < a.size(); ++y)
        if (!f.test(a.impl(x, y)) && !f.test(a.impl(y, x))) {
          prelinear = false;
          break;
        }
    row.clause[1] = prelinear;
    // (3) explicit quotient homomorphism onto a chain with kernel f
    {
      Quotient q = quotient(a, f);
      Homomorphism h{&a, &q.algebra, q.projection};
      ElementSet kernel = a.empty_set();
      for (std::size_t x = 0; x < a.size(); ++x)
        if (q.projection[x] == q.algebra.one()) kernel.set(x);
      row.clause[2] = h.problem().empty() && kernel == f && is_chain(q.algebra);
    }
    // (4) filters above f form a chain
    std::vector<const ElementSet*> above;
    for (const auto& g : F)
      if (f.is_subset_of(g)) above.push_back(&g);
    bool chain = true;
    for (auto* g : above)
      for (auto* h : above)
        if (!g->is_subset_of(*h) && !h->is_subset_of(*g)) chain = false;
    row.clause[3] = chain;
    // (5) every proper filter above f is prime
    bool all_prime = true;
    for (auto* g : above)
      if (g->count() < a.size() && !is_prime_filter(a, *g)) all_prime = false;
    row.clause[4] = all_prime;
    // (6) join condition
    row.clause[5] = is_prime_filter(a, f);
    row.consistent = std::all_of(std::begin(row.clause), std::end(row.clause), [&](bool c) { return c == row.clause[0]; });
    if (!row.consistent) {
      std::string s = "filter {";
      for (auto x : members(f)) s += " " + a.name(x);
      s += " }: clauses";
      for (int i = 0; i < 6; ++i) s += std::string(" (") + std::to_string(i + 1) + ")=" + (row.clause[i] ? "T" : "F");
      rep.discrepancies.push_back(s);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

using PointSet = boost::dynamic_bitset<>;

std::vector<PointSet> union_closure(const std::vector<PointSet>& gens, std::size_t npoints) {
  std::set<PointSet> seen;
  std::vector<PointSet> out;
  PointSet empty(npoints);
  seen.insert(empty);
  out.push_back(empty);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      PointSet u = out[i] | g;
      if (seen.insert(u).second) out.push_back(u);
    }
  std::sort(out.begin(), out.end(), [](const PointSet& x, const PointSet& y) {
    if (x.count() != y.count()) return x.count() < y.count();
    return x < y;
  });
  return out;
}

}  // namespace

SpecSpace spec_space(const FiniteAlgebra& a, std::size_t cap) {
  auto e = enumerate_filters(a, cap);
  SpecSpace s;
  s.points = e.primes;
  std::size_t np = s.points.size();
  s.below.assign(np, std::vector<bool>(np, false));
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t q = 0; q < np; ++q) s.below[p][q] = s.points[p].is_subset_of(s.points[q]);
  for (std::size_t x = 0; x < a.size(); ++x) {
    PointSet o(np);
    for (std::size_t p = 0; p < np; ++p)
      if (!s.points[p].test(x)) o.set(p);
    s.basic.push_back(o);
  }
  // finite intersections of basic opens are basic (O_a & O_b = O_{a|b}), so
  // unions of basic opens give the whole topology
  s.opens = union_closure(s.basic, np);
  s.order_is_forest = true;
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t q = 0; q < np; ++q)
      for (std::size_t r = 0; r < np; ++r)
        if (s.below[p][q] && s.below[p][r] && !s.below[q][r] && !s.below[r][q]) s.order_is_forest = false;
  s.closures_ok = true;
  for (std::size_t p = 0; p < np; ++p) {
    PointSet closure(np);
    closure.set();
    for (const auto& o : s.opens)
      if (!o.test(p)) closure &= ~o;
    for (std::size_t q = 0; q < np; ++q)
      if (closure.test(q) != s.below[p][q]) s.closures_ok = false;
  }
  return s;
}

DualMap dual_map(const Homomorphism& phi, const SpecSpace& source_spec, const SpecSpace& target_spec) {
  if (auto p = phi.problem(); !p.empty()) throw DomainError("not a homomorphism: " + p);
  const auto &A = *phi.source, &B = *phi.target;
  DualMap d;
  for (const auto& p : target_spec.points) {
    ElementSet pre = A.empty_set();
    for (std::size_t x = 0; x < A.size(); ++x)
      if (p.test(phi.map[x])) pre.set(x);
    auto it = std::find(source_spec.points.begin(), source_spec.points.end(), pre);
    if (it == source_spec.points.end()) throw InternalError("preimage of a prime filter is not prime");
    d.image.push_back(static_cast<std::size_t>(it - source_spec.points.begin()));
  }
  d.continuous = true;
  for (std::size_t x = 0; x < A.size(); ++x) {
    boost::dynamic_bitset<> pre(target_spec.points.size());
    for (std::size_t q = 0; q < d.image.size(); ++q)
      if (source_spec.basic[x].test(d.image[q])) pre.set(q);
    if (pre != target_spec.basic[phi.map[x]]) d.continuous = false;
  }
  (void)B;
  return d;
}

DualityReport duality_check(const FiniteAlgebra& a, std::size_t cap) {
  auto e = enumerate_filters(a, cap);
  SpecSpace s = spec_space(a, cap);
  std::size_t np = s.points.size();
  DualityReport r;
  r.filter_count = e.filters.size();
  r.open_count = s.opens.size();
  r.counts_match = r.filter_count == r.open_count;
  // F -> O_F
  std::vector<PointSet> image;
  for (const auto& f : e.filters) {
    PointSet o(np);
    for (auto x : members(f)) o |= s.basic[x];
    image.push_back(o);
  }
  r.order_isomorphism = true;
  std::set<PointSet> distinct(image.begin(), image.end());
  if (distinct.size() != image.size() || distinct.size() != s.opens.size()) r.order_isomorphism = false;
  for (const auto& o : image)
    if (!std::binary_search(s.opens.begin(), s.opens.end(), o, [](const PointSet& x, const PointSet& y) {
          if (x.count() != y.count()) return x.count() < y.count();
          return x < y;
        }))
      r.order_isomorphism = false;
  for (std::size_t i = 0; i < e.filters.size(); ++i)
    for (std::size_t j = 0; j < e.filters.size(); ++j)
      if (e.filters[i].is_subset_of(e.filters[j]) != image[i].is_subset_of(image[j])) r.order_isomorphism = false;
  r.meet_join_laws = true;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      if ((s.basic[x] & s.basic[y]) != s.basic[a.join(x, y)]) r.meet_join_laws = false;
      if ((s.basic[x] | s.basic[y]) != s.basic[a.meet(x, y)]) r.meet_join_laws = false;
    }
  auto kernel = [&](const PointSet& P) {
    ElementSet k = a.full_set();
    for (std::size_t p = 0; p < np; ++p)
      if (P.test(p)) k &= s.points[p];
    return k;
  };
  auto hull = [&](const ElementSet& D) {
    PointSet h(np);
    for (std::size_t p = 0; p < np; ++p)
      if (D.is_subset_of(s.points[p])) h.set(p);
    return h;
  };
  // left: subsets of size <= 2
  r.kernel_hull = true;
  for (std::size_t x = 0; x <= a.size(); ++x)
    for (std::size_t y = x; y <= a.size(); ++y) {
      ElementSet D = a.empty_set();
      if (x < a.size()) D.set(x);
      if (y < a.size()) D.set(y);
      if (kernel(hull(D)) != filter_generated(a, D)) r.kernel_hull = false;
    }
  // right: every subset of points when feasible
  r.hull_kernel = true;
  auto closure = [&](const PointSet& P) {
    PointSet c(np);
    c.set();
    for (const auto& o : s.opens)
      if ((o & P).none()) c &= ~o;
    return c;
  };
  if (np <= 16) {
    for (unsigned long mask = 0; mask < (1UL << np); ++mask) {
      PointSet P(np, mask);
      if (hull(kernel(P)) != closure(P)) r.hull_kernel = false;
    }
  } else {
    for (std::size_t p = 0; p < np; ++p) {
      PointSet P(np);
      P.set(p);
      if (hull(kernel(P)) != closure(P)) r.hull_kernel = false;
    }
  }
  return r;
}

}  // namespace mvdyn
