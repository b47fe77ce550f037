#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "mvdyn/semantics.hpp"

namespace mvdyn {

using ElementSet = boost::dynamic_bitset<>;
using Table = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kDefaultAlgebraCap = 64;

// Finite algebra (A, *, ->, 0, 1); meet, join and negation are derived from
// * and -> by a&b = a*(a->b), a|b = ((a->b)->b) & ((b->a)->a), !a = a->0.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(std::vector<std::string> names, Table star, Table impl, std::size_t zero, std::size_t one);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  std::size_t zero() const { return zero_; }
  std::size_t one() const { return one_; }

  std::size_t star(std::size_t a, std::size_t b) const { return star_[a][b]; }
  std::size_t impl(std::size_t a, std::size_t b) const { return impl_[a][b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  std::size_t neg(std::size_t a) const { return impl_[a][zero_]; }
  bool leq(std::size_t a, std::size_t b) const { return impl_[a][b] == one_; }
  const Table& star_table() const { return star_; }
  const Table& impl_table() const { return impl_; }

  std::size_t index_of(const std::string& name) const;
  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const {
    ElementSet s(size());
    s.set();
    return s;
  }

  // Empty when every algebra invariant holds (unit, commutativity,
  // associativity, monotonicity, residuation, bounds).
  std::string problem() const;

 private:
  std::vector<std::string> names_;
  Table star_, impl_, meet_, join_;
  std::size_t zero_ = 0, one_ = 0;
};

FiniteAlgebra finite_chain(long m, TNorm base = TNorm::Lukasiewicz);
FiniteAlgebra boolean_algebra2();
FiniteAlgebra product_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t cap = kDefaultAlgebraCap);
// Free Boolean algebra on n generators: all 2^(2^n) truth tables.
FiniteAlgebra free_boolean(std::size_t n, std::size_t cap = kDefaultAlgebraCap);

struct Subalgebra {
  FiniteAlgebra algebra;
  std::vector<std::size_t> elements;  // subalgebra index -> parent index
};
Subalgebra subalgebra_generated(const FiniteAlgebra& a, const std::vector<std::size_t>& gens);

struct Homomorphism {
  const FiniteAlgebra* source = nullptr;
  const FiniteAlgebra* target = nullptr;
  std::vector<std::size_t> map;

  std::string problem() const;  // empty when it commutes with *, ->, 0, 1
};

// Smallest filter containing d: upward closure of finite *-products.
ElementSet filter_generated(const FiniteAlgebra& a, const ElementSet& d);
bool is_filter(const FiniteAlgebra& a, const ElementSet& s);
std::vector<std::size_t> members(const ElementSet& s);

}  // namespace mvdyn
