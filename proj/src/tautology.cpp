#include "mvdyn/tautology.hpp"

#include <charconv>
#include <set>

#include "mvdyn/errors.hpp"
#include "mvdyn/pwl.hpp"
#include "mvdyn/substitution.hpp"

namespace mvdyn {

TautMethod TautMethod::parse(std::string_view s) {
  if (s == "truth-table" || s == "tt") return truth_table();
  if (s == "exact-pwl" || s == "pwl") return exact_pwl();
  if (s == "grid") return grid(10);
  if (s.starts_with("grid:")) {
    long b = 0;
    auto rest = s.substr(5);
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), b);
    if (ec != std::errc() || p != rest.data() + rest.size() || b < 1) throw DomainError("bad grid bound");
    return grid(b);
  }
  throw DomainError("unknown method '" + std::string(s) + "'");
}

std::string Verdict::name() const {
  switch (kind) {
    case Tautology: return "Tautology";
    case Countermodel: return "Countermodel";
    case Unknown: return "Unknown";
  }
  return "?";
}

std::vector<Rational> farey_values(long bound) {
  std::set<Rational> s;
  for (long q = 1; q <= bound; ++q)
    for (long p = 0; p <= q; ++p) s.insert(Rational(Integer(p), Integer(q)));
  return {s.begin(), s.end()};
}

namespace {

Verdict enumerate(const Formula& f, const Semantics& sem, const std::vector<Rational>& values, std::size_t cap) {
  auto vars = f.variables();
  Program prog = Program::compile(f);
  double count = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) count *= double(values.size());
  if (count > double(cap)) throw CapExceeded("enumeration of " + std::to_string(static_cast<long long>(count)) +
                                             " valuations exceeds the cap");
  Point p(f.arity(), Rational(0));
  std::vector<std::size_t> digit(vars.size(), 0);
  for (auto v : vars) p[v] = values[0];
  while (true) {
    Rational val = eval(prog, sem, p);
    if (val != Rational(1)) return {Verdict::Countermodel, p, val};
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (++digit[k] < values.size()) {
        p[vars[k]] = values[digit[k]];
        break;
      }
      digit[k] = 0;
      p[vars[k]] = values[0];
      if (k == 0) return {Verdict::Tautology, {}, Rational(1)};
    }
    if (vars.empty()) return {Verdict::Tautology, {}, Rational(1)};
  }
}

Verdict exact_pwl(const Formula& f) {
  auto vars = f.variables();
  if (vars.size() > 2) throw DomainError("exact-pwl needs at most 2 variables, formula has " + std::to_string(vars.size()));
  if (vars.empty()) {
    Rational v = eval(f, Semantics::lukasiewicz(), Point{});
    if (v == Rational(1)) return {Verdict::Tautology, {}, v};
    return {Verdict::Countermodel, {}, v};
  }
  // rename occurring variables to x0, x1
  std::vector<std::pair<std::size_t, Formula>> ren;
  for (std::size_t i = 0; i < vars.size(); ++i) ren.push_back({vars[i], Formula::var(i)});
  Formula g = apply_partial(ren, f);
  PwlFunction pw = pwl_from_formula(g, static_cast<int>(vars.size()));
  MinValue m = pwl_min_value(pw);
  if (m.value == Rational(1)) return {Verdict::Tautology, {}, m.value};
  Point p(f.arity(), Rational(0));
  for (std::size_t i = 0; i < vars.size(); ++i) p[vars[i]] = m.witness[i];
  return {Verdict::Countermodel, p, m.value};
}

}  // namespace

Verdict tautology_check(const Formula& f, const Semantics& sem, TautMethod method, std::size_t cap) {
  switch (method.kind) {
    case TautMethod::TruthTable:
      if (!sem.is_finite()) throw DomainError("truth-table method needs a finite chain semantics");
      return enumerate(f, sem, sem.carrier(), cap);
    case TautMethod::ExactPwl:
      if (sem != Semantics::lukasiewicz()) throw DomainError("exact-pwl method needs Lukasiewicz semantics");
      return exact_pwl(f);
    case TautMethod::Grid: {
      std::vector<Rational> vals;
      for (auto& v : farey_values(method.grid_bound))
        if (sem.contains(v)) vals.push_back(v);
      Verdict v = enumerate(f, sem, vals, cap);
      if (v.kind == Verdict::Tautology) v.kind = Verdict::Unknown;
      return v;
    }
  }
  throw InternalError("unknown method");
}

Verdict identity_check(const Formula& r, const Formula& s, const Semantics& sem, TautMethod method, std::size_t cap) {
  if (r == s) return {Verdict::Tautology, {}, Rational(1)};
  return tautology_check(conj(impl(r, s), impl(s, r)), sem, method, cap);
}

}  // namespace mvdyn
