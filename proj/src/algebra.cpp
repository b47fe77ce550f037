#include "mvdyn/algebra.hpp"

#include <algorithm>
#include <map>

#include "mvdyn/errors.hpp"

namespace mvdyn {

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> names, Table star, Table impl, std::size_t zero, std::size_t one)
    : names_(std::move(names)), star_(std::move(star)), impl_(std::move(impl)), zero_(zero), one_(one) {
  std::size_t n = names_.size();
  if (n == 0) throw DomainError("empty carrier");
  if (zero_ >= n || one_ >= n) throw DomainError("constant out of range");
  for (const auto* t : {&star_, &impl_}) {
    if (t->size() != n) throw DomainError("table has wrong size");
    for (const auto& row : *t) {
      if (row.size() != n) throw DomainError("table has wrong size");
      for (auto x : row)
        if (x >= n) throw DomainError("table entry out of range");
    }
  }
  meet_.assign(n, std::vector<std::size_t>(n));
  join_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) meet_[a][b] = star_[a][impl_[a][b]];
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t p = impl_[impl_[a][b]][b];
      std::size_t q = impl_[impl_[b][a]][a];
      join_[a][b] = meet_[p][q];
    }
}

std::size_t FiniteAlgebra::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw DomainError("no element named '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::string FiniteAlgebra::problem() const {
  std::size_t n = size();
  auto nm = [&](std::size_t a) { return names_[a]; };
  for (std::size_t a = 0; a < n; ++a) {
    if (star_[a][one_] != a) return "1 is not a unit for " + nm(a);
    if (!leq(zero_, a)) return "0 is not below " + nm(a);
    if (!leq(a, one_)) return nm(a) + " is not below 1";
    for (std::size_t b = 0; b < n; ++b) {
      if (star_[a][b] != star_[b][a]) return "* is not commutative at " + nm(a) + "," + nm(b);
      if (leq(a, b) && leq(b, a) && a != b) return "order is not antisymmetric at " + nm(a) + "," + nm(b);
      for (std::size_t c = 0; c < n; ++c) {
        if (star_[star_[a][b]][c] != star_[a][star_[b][c]]) return "* is not associative";
        if (leq(a, b) && !leq(star_[a][c], star_[b][c])) return "* is not monotone";
        if (leq(star_[c][a], b) != leq(c, impl_[a][b]))
          return "residuation fails at " + nm(c) + "," + nm(a) + "," + nm(b);
      }
    }
  }
  return {};
}

FiniteAlgebra finite_chain(long m, TNorm base) {
  Semantics sem = Semantics::finite_chain(m, base);
  auto carrier = sem.carrier();
  std::size_t n = carrier.size();
  std::vector<std::string> names;
  for (const auto& c : carrier) names.push_back(c.str());
  Table star(n, std::vector<std::size_t>(n)), impl(n, std::vector<std::size_t>(n));
  auto idx = [&](const Rational& v) {
    return static_cast<std::size_t>((v * Rational(m)).numerator().get_si());
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      star[a][b] = idx(sem.star(carrier[a], carrier[b]));
      impl[a][b] = idx(sem.impl(carrier[a], carrier[b]));
    }
  return FiniteAlgebra(std::move(names), std::move(star), std::move(impl), 0, n - 1);
}

FiniteAlgebra boolean_algebra2() { return finite_chain(1); }

FiniteAlgebra product_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t cap) {
  std::size_t na = a.size(), nb = b.size(), n = na * nb;
  if (n > cap) throw CapExceeded("product has " + std::to_string(n) + " elements, cap is " + std::to_string(cap));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  Table star(n, std::vector<std::size_t>(n)), impl(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t xi = x / nb, xj = x % nb, yi = y / nb, yj = y % nb;
      star[x][y] = a.star(xi, yi) * nb + b.star(xj, yj);
      impl[x][y] = a.impl(xi, yi) * nb + b.impl(xj, yj);
    }
  return FiniteAlgebra(std::move(names), std::move(star), std::move(impl), a.zero() * nb + b.zero(),
                       a.one() * nb + b.one());
}

FiniteAlgebra free_boolean(std::size_t n, std::size_t cap) {
  if (n > 5) throw CapExceeded("free Boolean algebra too large");
  std::size_t rows = std::size_t(1) << n;
  std::size_t size = std::size_t(1) << rows;
  if (size > cap) throw CapExceeded("free Boolean algebra has " + std::to_string(size) + " elements, cap is " +
                                    std::to_string(cap));
  std::vector<std::string> names;
  for (std::size_t t = 0; t < size; ++t) {
    std::string s;
    for (std::size_t r = 0; r < rows; ++r) s += ((t >> r) & 1) ? '1' : '0';
    names.push_back(s);
  }
  std::size_t full = size - 1;
  Table star(size, std::vector<std::size_t>(size)), impl(size, std::vector<std::size_t>(size));
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y) {
      star[x][y] = x & y;
      impl[x][y] = (~x | y) & full;
    }
  return FiniteAlgebra(std::move(names), std::move(star), std::move(impl), 0, full);
}

Subalgebra subalgebra_generated(const FiniteAlgebra& a, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(a.size(), false);
  std::vector<std::size_t> elems;
  auto add = [&](std::size_t x) {
    if (x >= a.size()) throw DomainError("generator out of range");
    if (!in[x]) {
      in[x] = true;
      elems.push_back(x);
    }
  };
  add(a.zero());
  add(a.one());
  for (auto g : gens) add(g);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      std::size_t x = elems[i], y = elems[j];
      add(a.star(x, y));
      add(a.impl(x, y));
      add(a.impl(y, x));
    }
  std::sort(elems.begin(), elems.end());
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  std::size_t n = elems.size();
  std::vector<std::string> names;
  Table star(n, std::vector<std::size_t>(n)), impl(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(a.name(elems[i]));
    for (std::size_t j = 0; j < n; ++j) {
      star[i][j] = pos.at(a.star(elems[i], elems[j]));
      impl[i][j] = pos.at(a.impl(elems[i], elems[j]));
    }
  }
  return {FiniteAlgebra(std::move(names), std::move(star), std::move(impl), pos.at(a.zero()), pos.at(a.one())),
          elems};
}

std::string Homomorphism::problem() const {
  if (!source || !target) return "missing algebra";
  const auto &A = *source, &B = *target;
  if (map.size() != A.size()) return "map has wrong size";
  for (auto x : map)
    if (x >= B.size()) return "map value out of range";
  if (map[A.zero()] != B.zero()) return "0 is not preserved";
  if (map[A.one()] != B.one()) return "1 is not preserved";
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < A.size(); ++b) {
      if (map[A.star(a, b)] != B.star(map[a], map[b])) return "* is not preserved at " + A.name(a) + "," + A.name(b);
      if (map[A.impl(a, b)] != B.impl(map[a], map[b])) return "-> is not preserved at " + A.name(a) + "," + A.name(b);
    }
  return {};
}

ElementSet filter_generated(const FiniteAlgebra& a, const ElementSet& d) {
  std::size_t n = a.size();
  // the *-products of d-elements form the closure of d under *; take its minimum's up-set
  ElementSet prods(n);
  prods.set(a.one());
  std::vector<std::size_t> frontier{a.one()};
  for (std::size_t i = d.find_first(); i != ElementSet::npos; i = d.find_next(i))
    if (!prods.test(i)) {
      prods.set(i);
      frontier.push_back(i);
    }
  for (std::size_t k = 0; k < frontier.size(); ++k)
    for (std::size_t i = d.find_first(); i != ElementSet::npos; i = d.find_next(i)) {
      std::size_t p = a.star(frontier[k], i);
      if (!prods.test(p)) {
        prods.set(p);
        frontier.push_back(p);
      }
    }
  ElementSet out(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t p = prods.find_first(); p != ElementSet::npos; p = prods.find_next(p))
      if (a.leq(p, x)) {
        out.set(x);
        break;
      }
  return out;
}

bool is_filter(const FiniteAlgebra& a, const ElementSet& s) {
  if (s.size() != a.size() || !s.test(a.one())) return false;
  for (std::size_t x = s.find_first(); x != ElementSet::npos; x = s.find_next(x))
    for (std::size_t y = 0; y < a.size(); ++y)
      if (s.test(a.impl(x, y)) && !s.test(y)) return false;
  return true;
}

std::vector<std::size_t> members(const ElementSet& s) {
  std::vector<std::size_t> out;
  for (std::size_t x = s.find_first(); x != ElementSet::npos; x = s.find_next(x)) out.push_back(x);
  return out;
}

}  // namespace mvdyn
