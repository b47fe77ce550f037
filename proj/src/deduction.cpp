#include "mvdyn/deduction.hpp"

#include <algorithm>
#include "json.hpp"
#include <set>
#include <sstream>

#include "mvdyn/odometer.hpp"
#include "mvdyn/parser.hpp"
#include "mvdyn/pwl.hpp"
#include "mvdyn/substitution.hpp"
#include "mvdyn/tautology.hpp"

namespace mvdyn {

Logic parse_logic(std::string_view s) {
  if (s == "mv" || s == "MV" || s == "luk" || s == "lukasiewicz") return Logic::MV;
  if (s == "product") return Logic::Product;
  if (s == "godel") return Logic::Godel;
  if (s == "boole" || s == "boolean") return Logic::Boole;
  throw DomainError("unknown logic '" + std::string(s) + "'");
}

std::string logic_name(Logic l) {
  switch (l) {
    case Logic::MV: return "mv";
    case Logic::Product: return "product";
    case Logic::Godel: return "godel";
    case Logic::Boole: return "boole";
  }
  return "?";
}

Semantics logic_semantics(Logic l) {
  switch (l) {
    case Logic::MV: return Semantics::lukasiewicz();
    case Logic::Product: return Semantics::product();
    case Logic::Godel: return Semantics::godel();
    case Logic::Boole: return Semantics::boolean();
  }
  throw InternalError("unknown logic");
}

AxiomSet builtin_axioms(Logic logic) {
  static const char* base[] = {
      "((x0 -> x1) * (x1 -> x2)) -> (x0 -> x2)",
      "(x0 * x1) -> x0",
      "0 -> x0",
      "(x0 * x1) -> (x1 * x0)",
      "(x0 & x1) -> (x1 & x0)",
      "(x0 -> (x1 -> x2)) -> ((x0 * x1) -> x2)",
      "((x0 * x1) -> x2) -> (x0 -> (x1 -> x2))",
      "(((x0 -> x1) -> x2) * ((x1 -> x0) -> x2)) -> x2",
  };
  AxiomSet a;
  a.logic = logic;
  for (const char* s : base) a.schemas.push_back(parse_formula(s));
  switch (logic) {
    case Logic::MV: a.schemas.push_back(parse_formula("!!x0 -> x0")); break;
    case Logic::Product:
      a.schemas.push_back(parse_formula("!!x0 -> ((x1 * x0 -> x2 * x0) -> (x1 -> x2))"));
      a.schemas.push_back(parse_formula("!(x0 & !x0)"));
      break;
    case Logic::Godel: a.schemas.push_back(parse_formula("x0 -> (x0 * x0)")); break;
    case Logic::Boole: a.schemas.push_back(parse_formula("x0 | !x0")); break;
  }
  return a;
}

namespace {

bool is_leaf(Kind k) { return k == Kind::Var || k == Kind::Zero || k == Kind::One; }

bool match(const Formula& s, const Formula& f, std::vector<std::optional<Formula>>& bind) {
  Kind ks = s.kind(), kf = f.kind();
  if (ks == Kind::Var) {
    auto& b = bind[s.var_index()];
    if (b) return *b == f;
    b = f;
    return true;
  }
  if (ks == Kind::Zero || ks == Kind::One) return s == f;
  if (ks == kf) {
    if (!match(s.lhs(), f.lhs(), bind)) return false;
    return ks == Kind::Neg || match(s.rhs(), f.rhs(), bind);
  }
  if (is_sugar(kf) && (!is_sugar(ks) || kf > ks)) return match(s, f.expand_head(), bind);
  if (is_sugar(ks)) return match(s.expand_head(), f, bind);
  (void)is_leaf;
  return false;
}

// Head of f with sugar peeled until a core connective appears.
Formula core_head(Formula f) {
  while (is_sugar(f.kind())) f = f.expand_head();
  return f;
}

class AxiomOracle {
 public:
  AxiomOracle(const Proof& p, Logic logic) : logic_(logic) {
    if (logic == Logic::Boole) {
      std::size_t n = 0;
      for (const auto& l : p.lines) n = std::max(n, l.formula.arity());
      if (n <= kDefaultTableCap) tables_.emplace(n);
    }
  }
  bool proves(const Formula& f) {
    if (logic_ == Logic::Boole) return tables_ && tables_->table(f).all_ones();
    if (logic_ == Logic::MV && f.variables().size() <= 2)
      return tautology_check(f, Semantics::lukasiewicz(), TautMethod::exact_pwl()).kind == Verdict::Tautology;
    return false;
  }

 private:
  Logic logic_;
  std::optional<TruthTableCache> tables_;
};

}  // namespace

std::optional<PartialSubstitution> match_schema(const Formula& schema, const Formula& f) {
  std::vector<std::optional<Formula>> bind(schema.arity());
  if (!match(schema, f, bind)) return std::nullopt;
  PartialSubstitution out;
  for (std::size_t i = 0; i < bind.size(); ++i)
    if (bind[i]) out.push_back({i, *bind[i]});
  return out;
}

ProofVerdict check_proof(const Proof& p, const AxiomSet& axioms) {
  std::optional<AxiomOracle> oracle;
  auto fail = [](std::size_t line, std::string why) { return ProofVerdict{false, line, std::move(why)}; };
  for (std::size_t j = 1; j <= p.lines.size(); ++j) {
    const ProofLine& line = p.lines[j - 1];
    const Justification& J = line.just;
    auto earlier = [&](std::size_t k) { return k >= 1 && k < j; };
    switch (J.kind) {
      case Justification::Axiom: {
        bool ok = false;
        for (const auto& s : axioms.schemas) {
          ok = axioms.strict ? s == line.formula : match_schema(s, line.formula).has_value();
          if (ok) break;
        }
        if (!ok && axioms.use_oracle && !axioms.strict) {
          if (!oracle) oracle.emplace(p, axioms.logic);
          ok = oracle->proves(line.formula);
        }
        if (!ok) return fail(j, "not an axiom of " + logic_name(axioms.logic));
        break;
      }
      case Justification::Hypothesis:
        if (J.hyp >= p.hypotheses.size()) return fail(j, "hypothesis " + std::to_string(J.hyp) + " does not exist");
        if (!(p.hypotheses[J.hyp] == line.formula))
          return fail(j, "formula differs from hypothesis " + std::to_string(J.hyp));
        break;
      case Justification::MP: {
        if (!earlier(J.k) || !earlier(J.m)) return fail(j, "modus ponens must cite earlier lines");
        Formula h = core_head(p.lines[J.m - 1].formula);
        if (h.kind() != Kind::Impl || !(h.rhs() == line.formula))
          return fail(j, "line " + std::to_string(J.m) + " is not an implication with conclusion " +
                             print_formula(line.formula));
        if (!(h.lhs() == p.lines[J.k - 1].formula))
          return fail(j, "premise of line " + std::to_string(J.m) + " is not line " + std::to_string(J.k));
        break;
      }
      case Justification::Subst: {
        if (!earlier(J.k)) return fail(j, "substitution must cite an earlier line");
        if (!(apply_partial(J.sigma, p.lines[J.k - 1].formula) == line.formula))
          return fail(j, "formula is not the substitution instance of line " + std::to_string(J.k));
        break;
      }
    }
  }
  return {};
}

std::string Consequence::name() const {
  switch (kind) {
    case Yes: return "Yes";
    case No: return "No";
    case Unknown: return "Unknown";
  }
  return "?";
}

namespace {

Consequence finite_consequence(const std::vector<Formula>& delta, const Formula& r, const Semantics& sem) {
  std::vector<Formula> all = delta;
  all.push_back(r);
  std::set<std::size_t> vs;
  std::size_t arity = 0;
  for (const auto& f : all) {
    for (auto v : f.variables()) vs.insert(v);
    arity = std::max(arity, f.arity());
  }
  std::vector<std::size_t> vars(vs.begin(), vs.end());
  auto values = sem.carrier();
  double count = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) count *= double(values.size());
  if (count > double(kDefaultEnumerationCap)) throw CapExceeded("too many valuations for mp-consequence");
  std::vector<Program> dp;
  for (const auto& d : delta) dp.push_back(Program::compile(d));
  Program rp = Program::compile(r);
  Point p(arity, values[0]);
  std::vector<std::size_t> digit(vars.size(), 0);
  const Rational one(1);
  while (true) {
    bool sat = std::all_of(dp.begin(), dp.end(), [&](const Program& d) { return eval(d, sem, p) == one; });
    if (sat && eval(rp, sem, p) != one) return {Consequence::No, 0, p};
    std::size_t k = vars.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++digit[k] < values.size()) {
        p[vars[k]] = values[digit[k]];
        done = false;
        break;
      }
      digit[k] = 0;
      p[vars[k]] = values[0];
    }
    if (done) break;
  }
  // every valuation satisfying delta satisfies r; on a finite chain this local
  // check decides membership of r in the filter generated by delta
  return {Consequence::Yes, std::max<std::size_t>(1, values.size() - 1), {}};
}

Consequence lukasiewicz_consequence(const std::vector<Formula>& delta, const Formula& r, std::size_t bound) {
  std::vector<Formula> all = delta;
  all.push_back(r);
  std::set<std::size_t> vs;
  for (const auto& f : all)
    for (auto v : f.variables()) vs.insert(v);
  if (vs.size() > 2) throw DomainError("Lukasiewicz consequence needs at most 2 variables");
  std::vector<std::size_t> vars(vs.begin(), vs.end());
  PartialSubstitution ren;
  for (std::size_t i = 0; i < vars.size(); ++i) ren.push_back({vars[i], Formula::var(i)});
  int dim = std::max<int>(1, static_cast<int>(vars.size()));
  std::vector<Formula> d2;
  for (const auto& d : delta) d2.push_back(apply_partial(ren, d));
  Formula r2 = apply_partial(ren, r);
  std::vector<PwlFunction> dp;
  for (const auto& d : d2) dp.push_back(pwl_from_formula(d, dim));
  PwlFunction rp = pwl_from_formula(r2, dim);
  // every function is affine on each cell of the common refinement, so the
  // set where delta is 1 is a union of faces spanned by its vertices
  CellComplex common = rp.complex;
  for (const auto& f : dp) common = common_refinement(common, f.complex);
  const Rational one(1);
  for (const auto& v : common.vertices) {
    bool sat = std::all_of(dp.begin(), dp.end(), [&](const PwlFunction& f) { return pwl_eval(f, v) == one; });
    if (sat && pwl_eval(rp, v) != one) {
      std::size_t arity = 0;
      for (const auto& f : all) arity = std::max(arity, f.arity());
      Point p(arity, Rational(0));
      for (std::size_t i = 0; i < vars.size(); ++i) p[vars[i]] = v[i];
      return {Consequence::No, 0, p};
    }
  }
  Formula prod = delta.empty() ? Formula::one() : d2[0];
  for (std::size_t i = 1; i < d2.size(); ++i) prod = star(prod, d2[i]);
  PwlFunction pp = pwl_from_formula(prod, dim);
  PwlFunction power = pp;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (k > 1) power = pwl_combine(PwlOp::Star, power, pp);
    if (pwl_min_value(pwl_combine(PwlOp::Impl, power, rp)).value == one) return {Consequence::Yes, k, {}};
  }
  return {Consequence::Unknown, 0, {}};
}

}  // namespace

Consequence mp_consequence(const std::vector<Formula>& delta, const Formula& r, const Semantics& sem,
                           std::size_t star_power_bound) {
  if (sem.is_finite()) return finite_consequence(delta, r, sem);
  if (sem == Semantics::lukasiewicz()) return lukasiewicz_consequence(delta, r, star_power_bound);
  throw DomainError("no decision procedure for " + sem.name() + " consequence");
}

namespace {

using nlohmann::json;

std::size_t parse_var(const std::string& s) {
  std::string t = s;
  if (!t.empty() && (t[0] == 'x' || t[0] == 'X')) t = t.substr(1);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw MalformedProof("bad variable name '" + s + "'");
  return std::stoul(t);
}

std::size_t as_index(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw MalformedProof(std::string("bad ") + what);
  return j.get<std::size_t>();
}

}  // namespace

Proof read_proof(std::istream& in) {
  Proof p;
  std::string text;
  std::size_t lineno = 0;
  bool explicit_hyps = false;
  std::vector<std::optional<Formula>> implicit;
  while (std::getline(in, text)) {
    ++lineno;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(text);
      if (!j.is_object()) throw MalformedProof("expected an object");
      if (j.contains("hypotheses")) {
        if (!p.lines.empty() || explicit_hyps) throw MalformedProof("hypotheses must come first");
        for (const auto& h : j.at("hypotheses")) p.hypotheses.push_back(parse_formula(h.get<std::string>()));
        explicit_hyps = true;
        continue;
      }
      ProofLine line{parse_formula(j.at("formula").get<std::string>()), {}};
      const json& J = j.at("just");
      if (J.is_string()) {
        if (J.get<std::string>() != "axiom") throw MalformedProof("unknown justification");
        line.just = Justification::axiom();
      } else if (J.contains("hyp")) {
        line.just = Justification::hypothesis(as_index(J.at("hyp"), "hypothesis index"));
        if (!explicit_hyps) {
          std::size_t i = line.just.hyp;
          if (implicit.size() <= i) implicit.resize(i + 1);
          if (!implicit[i]) implicit[i] = line.formula;
        }
      } else if (J.contains("mp")) {
        const json& a = J.at("mp");
        if (!a.is_array() || a.size() != 2) throw MalformedProof("mp needs [k, m]");
        line.just = Justification::mp(as_index(a[0], "line number"), as_index(a[1], "line number"));
      } else if (J.contains("subst")) {
        const json& s = J.at("subst");
        PartialSubstitution sigma;
        for (auto it = s.at("sigma").begin(); it != s.at("sigma").end(); ++it)
          sigma.push_back({parse_var(it.key()), parse_formula(it.value().get<std::string>())});
        std::sort(sigma.begin(), sigma.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        line.just = Justification::subst(as_index(s.at("line"), "line number"), std::move(sigma));
      } else {
        throw MalformedProof("unknown justification");
      }
      p.lines.push_back(std::move(line));
    } catch (const MalformedProof& e) {
      throw MalformedProof("proof line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ParseError& e) {
      throw MalformedProof("proof line " + std::to_string(lineno) + ": " + e.what());
    } catch (const json::exception& e) {
      throw MalformedProof("proof line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!explicit_hyps)
    for (std::size_t i = 0; i < implicit.size(); ++i) {
      if (!implicit[i]) throw MalformedProof("hypothesis " + std::to_string(i) + " is never stated");
      p.hypotheses.push_back(*implicit[i]);
    }
  return p;
}

std::string write_proof(const Proof& p) {
  std::ostringstream os;
  json h = json::array();
  for (const auto& f : p.hypotheses) h.push_back(print_formula(f));
  os << json{{"hypotheses", h}}.dump() << '\n';
  for (const auto& l : p.lines) {
    json j;
    j["formula"] = print_formula(l.formula);
    switch (l.just.kind) {
      case Justification::Axiom: j["just"] = "axiom"; break;
      case Justification::Hypothesis: j["just"] = {{"hyp", l.just.hyp}}; break;
      case Justification::MP: j["just"] = {{"mp", {l.just.k, l.just.m}}}; break;
      case Justification::Subst: {
        json sigma = json::object();
        for (const auto& [v, f] : l.just.sigma) sigma["x" + std::to_string(v)] = print_formula(f);
        j["just"] = {{"subst", {{"line", l.just.k}, {"sigma", sigma}}}};
        break;
      }
    }
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace mvdyn
