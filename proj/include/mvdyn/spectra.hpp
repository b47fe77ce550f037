#pragma once

#include <string>
#include <vector>

#include "mvdyn/algebra.hpp"

namespace mvdyn {

struct FilterEnumeration {
  std::vector<ElementSet> filters;  // sorted by (size, members)
  std::vector<ElementSet> primes;
  std::vector<ElementSet> maximals;
};

FilterEnumeration enumerate_filters(const FiniteAlgebra& a, std::size_t cap = kDefaultAlgebraCap);
// Proper and a|b in f implies a in f or b in f.
bool is_prime_filter(const FiniteAlgebra& a, const ElementSet& f);

struct Quotient {
  FiniteAlgebra algebra;
  std::vector<std::size_t> projection;  // element -> class
};
// A/f with a ~ b iff a->b and b->a lie in f. Throws if ~ is not a congruence.
Quotient quotient(const FiniteAlgebra& a, const ElementSet& f);
bool is_chain(const FiniteAlgebra& a);

struct Lemma7Row {
  ElementSet filter;
  bool clause[6] = {};  // (1) meet-irreducible .. (6) join condition
  bool consistent = false;
};
struct Lemma7Report {
  std::vector<Lemma7Row> rows;  // one per proper filter
  std::vector<std::string> discrepancies;
  bool ok() const { return discrepancies.empty(); }
};
Lemma7Report lemma7_check(const FiniteAlgebra& a, std::size_t cap = kDefaultAlgebraCap);

struct SpecSpace {
  std::vector<ElementSet> points;              // prime filters
  std::vector<std::vector<bool>> below;        // below[p][q] iff points[p] subset of points[q]
  std::vector<boost::dynamic_bitset<>> basic;  // basic[a] = O_a = {p : a not in p}
  std::vector<boost::dynamic_bitset<>> opens;  // all open sets, sorted
  bool order_is_forest = false;
  bool closures_ok = false;  // closure of {p} equals {q : q contains p}
};
SpecSpace spec_space(const FiniteAlgebra& a, std::size_t cap = kDefaultAlgebraCap);

// phi* : Spec(target) -> Spec(source), as indices into the two point lists.
struct DualMap {
  std::vector<std::size_t> image;
  bool continuous = false;  // (phi*)^{-1}[O_a] = O_{phi(a)} for every a
};
DualMap dual_map(const Homomorphism& phi, const SpecSpace& source_spec, const SpecSpace& target_spec);

struct DualityReport {
  std::size_t filter_count = 0, open_count = 0;
  bool counts_match = false;
  bool order_isomorphism = false;  // F -> union of O_a (a in F) is an inclusion isomorphism
  bool meet_join_laws = false;     // O_a & O_b = O_{a|b}, O_a | O_b = O_{a&b}
  bool kernel_hull = false;        // intersection of primes containing D is the filter generated by D
  bool hull_kernel = false;        // primes containing the intersection of P form the closure of P
  bool ok() const { return counts_match && order_isomorphism && meet_join_laws && kernel_hull && hull_kernel; }
};
DualityReport duality_check(const FiniteAlgebra& a, std::size_t cap = kDefaultAlgebraCap);

}  // namespace mvdyn
