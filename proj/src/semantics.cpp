#include "mvdyn/semantics.hpp"

#include <algorithm>
#include <charconv>

#include "mvdyn/errors.hpp"

namespace mvdyn {

Semantics Semantics::finite_chain(long m, TNorm base) {
  if (m < 1) throw DomainError("finite chain needs m >= 1");
  if (base == TNorm::Product) throw DomainError("finite chains carry Godel or Lukasiewicz operations only");
  return Semantics(base, m);
}

Semantics Semantics::parse(std::string_view name) {
  if (name == "godel" || name == "g") return godel();
  if (name == "product" || name == "prod" || name == "p") return product();
  if (name == "luk" || name == "lukasiewicz" || name == "mv" || name == "l") return lukasiewicz();
  if (name == "boole" || name == "bool" || name == "boolean") return boolean();
  if (name.starts_with("chain:")) {
    auto rest = name.substr(6);
    TNorm base = TNorm::Lukasiewicz;
    if (auto c = rest.find(':'); c != std::string_view::npos) {
      auto b = rest.substr(c + 1);
      if (b == "godel") base = TNorm::Godel;
      else if (b != "luk") throw DomainError("unknown chain base '" + std::string(b) + "'");
      rest = rest.substr(0, c);
    }
    long m = 0;
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), m);
    if (ec != std::errc() || p != rest.data() + rest.size()) throw DomainError("bad chain size");
    return finite_chain(m, base);
  }
  throw DomainError("unknown logic '" + std::string(name) + "'");
}

std::string Semantics::name() const {
  std::string b = base_ == TNorm::Godel ? "godel" : (base_ == TNorm::Product ? "product" : "luk");
  if (m_ == 0) return b;
  return "chain:" + std::to_string(m_) + ":" + b;
}

Rational Semantics::star(const Rational& a, const Rational& b) const {
  switch (base_) {
    case TNorm::Godel: return rmin(a, b);
    case TNorm::Product: return a * b;
    case TNorm::Lukasiewicz: return rmax(a + b - Rational(1), Rational(0));
  }
  return Rational(0);
}

Rational Semantics::impl(const Rational& a, const Rational& b) const {
  if (a <= b) return Rational(1);
  switch (base_) {
    case TNorm::Godel: return b;
    case TNorm::Product: return b / a;
    case TNorm::Lukasiewicz: return Rational(1) - a + b;
  }
  return Rational(1);
}

bool Semantics::contains(const Rational& v) const {
  if (v.sign() < 0 || v > Rational(1)) return false;
  if (m_ == 0) return true;
  return (Integer(m_) % v.denominator()) == 0;
}

std::vector<Rational> Semantics::carrier() const {
  if (m_ == 0) throw DomainError("carrier requested for an infinite semantics");
  std::vector<Rational> out;
  for (long k = 0; k <= m_; ++k) out.emplace_back(Integer(k), Integer(m_));
  return out;
}

Rational eval(const Program& p, const Semantics& sem, std::span<const Rational> point) {
  if (point.size() < p.arity)
    throw DomainError("missing value for variable x" + std::to_string(point.size()));
  for (std::size_t i = 0; i < p.arity; ++i)
    if (!sem.contains(point[i]))
      throw DomainError("value " + point[i].str() + " of x" + std::to_string(i) + " outside the domain of " +
                        sem.name());
  return run_program(p, RationalAlgebra{sem}, point);
}

Rational eval(const Formula& f, const Semantics& sem, std::span<const Rational> point) {
  return eval(Program::compile(f), sem, point);
}

namespace {

struct DoubleAlgebra {
  TNorm t;
  double zero() const { return 0.0; }
  double one() const { return 1.0; }
  double star(double a, double b) const {
    switch (t) {
      case TNorm::Godel: return std::min(a, b);
      case TNorm::Product: return a * b;
      default: return std::max(a + b - 1.0, 0.0);
    }
  }
  double impl(double a, double b) const {
    if (a <= b) return 1.0;
    switch (t) {
      case TNorm::Godel: return b;
      case TNorm::Product: return b / a;
      default: return 1.0 - a + b;
    }
  }
  double conj(double a, double b) const { return std::min(a, b); }
  double disj(double a, double b) const { return std::max(a, b); }
};

}  // namespace

double eval_double(const Program& p, TNorm t, std::span<const double> point) {
  if (point.size() < p.arity) throw DomainError("missing variable value");
  return run_program(p, DoubleAlgebra{t}, point);
}

}  // namespace mvdyn
