#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvdyn/formula.hpp"
#include "mvdyn/rational.hpp"

namespace mvdyn {

enum class TNorm { Godel, Product, Lukasiewicz };

// Truth-value semantics: one of the three basic t-norms on [0,1], or a finite
// chain {0, 1/m, ..., 1} carrying the Godel or Lukasiewicz operations.
class Semantics {
 public:
  static Semantics godel() { return Semantics(TNorm::Godel, 0); }
  static Semantics product() { return Semantics(TNorm::Product, 0); }
  static Semantics lukasiewicz() { return Semantics(TNorm::Lukasiewicz, 0); }
  static Semantics finite_chain(long m, TNorm base = TNorm::Lukasiewicz);
  static Semantics boolean() { return finite_chain(1); }
  // "godel", "product", "luk", "boole", "chain:<m>[:godel|:luk]"
  static Semantics parse(std::string_view name);

  TNorm base() const { return base_; }
  bool is_finite() const { return m_ > 0; }
  long chain_m() const { return m_; }
  std::string name() const;

  Rational star(const Rational& a, const Rational& b) const;
  Rational impl(const Rational& a, const Rational& b) const;
  bool contains(const Rational& v) const;
  std::vector<Rational> carrier() const;  // finite chains only

  friend bool operator==(const Semantics&, const Semantics&) = default;

 private:
  Semantics(TNorm b, long m) : base_(b), m_(m) {}
  TNorm base_;
  long m_;
};

struct RationalAlgebra {
  const Semantics& sem;
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational star(const Rational& a, const Rational& b) const { return sem.star(a, b); }
  Rational impl(const Rational& a, const Rational& b) const { return sem.impl(a, b); }
  // min/max are definable in every BL-algebra (a&b = a*(a->b)); shortcut them.
  Rational conj(const Rational& a, const Rational& b) const { return rmin(a, b); }
  Rational disj(const Rational& a, const Rational& b) const { return rmax(a, b); }
};

// Exact evaluation; throws DomainError on missing or out-of-domain values.
Rational eval(const Formula& f, const Semantics& sem, std::span<const Rational> point);
Rational eval(const Program& p, const Semantics& sem, std::span<const Rational> point);

// Floating-point evaluation for the three t-norms (statistics only).
double eval_double(const Program& p, TNorm t, std::span<const double> point);

}  // namespace mvdyn
