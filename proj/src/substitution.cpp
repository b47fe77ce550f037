#include "mvdyn/substitution.hpp"

#include <charconv>
#include <unordered_map>

#include "mvdyn/errors.hpp"
#include "mvdyn/odometer.hpp"
#include "mvdyn/parser.hpp"

namespace mvdyn {

Substitution::Substitution(std::vector<Formula> images) : images_(std::move(images)) {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i].arity() > images_.size())
      throw DomainError("image of x" + std::to_string(i) + " mentions a variable beyond the arity " +
                        std::to_string(images_.size()));
}

Substitution Substitution::identity(std::size_t n) {
  std::vector<Formula> im;
  for (std::size_t i = 0; i < n; ++i) im.push_back(Formula::var(i));
  return Substitution(std::move(im));
}

Substitution Substitution::parse(std::string_view text) {
  std::vector<Formula> im;
  std::size_t start = 0;
  while (true) {
    auto semi = text.find(';', start);
    auto piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    im.push_back(parse_formula(piece));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return Substitution(std::move(im));
}

namespace {

template <class Lookup>
Formula substitute(const Formula& f, Lookup&& lookup) {
  std::unordered_map<const Node*, Formula> memo;
  // explicit post-order to survive deep formulas
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, ready] = stack.back();
    stack.pop_back();
    if (memo.count(g.id())) continue;
    Kind k = g.kind();
    if (k == Kind::Var) {
      memo.emplace(g.id(), lookup(g.var_index(), g));
      continue;
    }
    if (k == Kind::Zero || k == Kind::One) {
      memo.emplace(g.id(), g);
      continue;
    }
    if (!ready) {
      stack.push_back({g, true});
      stack.push_back({g.lhs(), false});
      if (k != Kind::Neg) stack.push_back({g.rhs(), false});
      continue;
    }
    const Formula& l = memo.at(g.lhs().id());
    if (k == Kind::Neg) {
      memo.emplace(g.id(), l.id() == g.lhs().id() ? g : neg(l));
    } else {
      const Formula& r = memo.at(g.rhs().id());
      bool same = l.id() == g.lhs().id() && r.id() == g.rhs().id();
      memo.emplace(g.id(), same ? g : Formula::make(k, l, r));
    }
  }
  return memo.at(f.id());
}

}  // namespace

Formula Substitution::apply(const Formula& f) const {
  return substitute(f, [&](std::size_t i, const Formula&) -> Formula {
    if (i >= images_.size())
      throw DomainError("variable x" + std::to_string(i) + " outside substitution arity " +
                        std::to_string(images_.size()));
    return images_[i];
  });
}

std::string Substitution::str() const {
  std::string s;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += "; ";
    s += print_formula(images_[i]);
  }
  return s;
}

Formula apply_substitution(const Substitution& sigma, const Formula& f) { return sigma.apply(f); }

Substitution compose_substitutions(const Substitution& sigma, const Substitution& tau) {
  if (sigma.arity() != tau.arity()) throw DomainError("substitution arity mismatch");
  std::vector<Formula> im;
  for (const auto& t : tau.images()) im.push_back(sigma.apply(t));
  return Substitution(std::move(im));
}

Formula iterate_substitution(const Substitution& sigma, const Formula& f, std::size_t k) {
  Formula g = f;
  for (std::size_t i = 0; i < k; ++i) g = sigma.apply(g);
  return g;
}

Formula apply_partial(const std::vector<std::pair<std::size_t, Formula>>& sigma, const Formula& f) {
  return substitute(f, [&](std::size_t i, const Formula& v) -> Formula {
    for (const auto& [j, g] : sigma)
      if (j == i) return g;
    return v;
  });
}

Formula tent_formula(const Formula& x) {
  Formula m = conj(x, neg(x));
  return oplus(m, m);
}

Substitution tent_substitution(std::size_t n) {
  std::vector<Formula> im;
  for (std::size_t i = 0; i < n; ++i) im.push_back(tent_formula(Formula::var(i)));
  return Substitution(std::move(im));
}

Substitution flip_substitution() { return Substitution({neg(Formula::var(0))}); }

namespace {

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw DomainError("bad size '" + std::string(s) + "'");
  return v;
}

}  // namespace

Substitution named_substitution(std::string_view spec) {
  if (spec == "tent") return tent_substitution(1);
  if (spec == "tent2") return tent_substitution(2);
  if (spec.starts_with("tent:")) return tent_substitution(parse_size(spec.substr(5)));
  if (spec == "flip") return flip_substitution();
  if (spec == "identity" || spec == "id") return Substitution::identity(1);
  if (spec.starts_with("identity:")) return Substitution::identity(parse_size(spec.substr(9)));
  if (spec.starts_with("odometer:")) return odometer_substitution(parse_size(spec.substr(9)));
  return Substitution::parse(spec);
}

}  // namespace mvdyn
