#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "mvdyn/algebra.hpp"
#include "mvdyn/deduction.hpp"
#include "mvdyn/dynamics.hpp"
#include "mvdyn/errors.hpp"
#include "mvdyn/json_io.hpp"
#include "mvdyn/odometer.hpp"
#include "mvdyn/parser.hpp"
#include "mvdyn/pwl.hpp"
#include "mvdyn/semantics.hpp"
#include "mvdyn/spectra.hpp"
#include "mvdyn/substitution.hpp"
#include "mvdyn/tautology.hpp"

namespace mvdyn::cli {

namespace {

struct Globals {
  std::string format = "json";
  bool format_given = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
  unsigned threads = 1;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Substitution substitution_spec(const std::string& spec) {
  if (spec == "rotation") return rotation_homeomorphism().sigma;
  return named_substitution(spec);
}

FiniteAlgebra algebra_factor(const std::string& s, std::size_t cap) {
  auto parts = [&] {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ':')) out.push_back(t);
    return out;
  }();
  if (s == "2" || s == "bool") return boolean_algebra2();
  if (parts.size() >= 2 && parts[0] == "chain") {
    long m = std::stol(parts[1]);
    TNorm base = TNorm::Lukasiewicz;
    if (parts.size() == 3) {
      if (parts[2] == "godel") base = TNorm::Godel;
      else if (parts[2] != "luk") throw DomainError("chain base must be luk or godel");
    } else if (parts.size() > 3) {
      throw DomainError("bad chain spec '" + s + "'");
    }
    if (m < 1) throw DomainError("chain needs m >= 1");
    if (static_cast<std::size_t>(m) + 1 > cap) throw CapExceeded("chain exceeds the algebra cap");
    return finite_chain(m, base);
  }
  if (parts.size() == 2 && parts[0] == "free") return free_boolean(std::stoul(parts[1]), cap);
  if (parts.size() >= 2 && parts[0] == "json") return algebra_from_json(read_json_file(s.substr(5)));
  throw DomainError("unknown algebra '" + s + "'");
}

// "2", "chain:m[:luk|:godel]", "free:n", "json:path", products joined by '*'.
FiniteAlgebra algebra_spec(const std::string& spec, std::size_t cap) {
  std::vector<std::string> factors;
  std::stringstream ss(spec);
  std::string t;
  while (std::getline(ss, t, '*')) {
    t.erase(0, t.find_first_not_of(' '));
    t.erase(t.find_last_not_of(' ') + 1);
    factors.push_back(t);
  }
  if (factors.empty()) throw DomainError("empty algebra spec");
  try {
    FiniteAlgebra a = algebra_factor(factors[0], cap);
    for (std::size_t i = 1; i < factors.size(); ++i) a = product_algebra(a, algebra_factor(factors[i], cap), cap);
    return a;
  } catch (const std::invalid_argument&) {
    throw DomainError("bad number in algebra spec '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw DomainError("number out of range in algebra spec '" + spec + "'");
  }
}

Json names_of(const FiniteAlgebra& a, const ElementSet& s) {
  Json out = Json::array();
  for (auto x : members(s)) out.push_back(a.name(x));
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ',')) out.push_back(Rational::parse(t).to_double());
  return out;
}

std::string rat_text(const Rational& q) { return q.str(); }

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int main(const std::vector<std::string>& args);

 private:
  void emit(const Json& j, const std::string& text = {}) {
    if (g_.format == "text" && !text.empty()) out_ << text << '\n';
    else out_ << j.dump() << '\n';
  }
  std::size_t cap_or(std::size_t d) const { return g_.cap ? *g_.cap : d; }
  template <class T>
  T* hold(T v = T()) {
    auto p = std::make_shared<T>(std::move(v));
    store_.push_back(p);
    return p.get();
  }

  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  std::vector<std::shared_ptr<void>> store_;
};

int Runner::main(const std::vector<std::string>& args) {
  CLI::App app{"Exact many-valued logic, piecewise-linear functions and substitution dynamics"};
  app.name("mvdyn");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", g_.format, "Output format: json (default), csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->each([&](const std::string&) { g_.format_given = true; });
  app.add_option("--seed", g_.seed, "Random seed (stats)");
  app.add_option("--cap", g_.cap, "Resource cap for enumerations and table sizes");
  app.add_option("--threads", g_.threads, "Worker threads for parallel subcommands")->check(CLI::Range(1u, 256u));

  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  // eval
  {
    auto* s = app.add_subcommand("eval", "Evaluate a formula exactly at a rational point");
    s->footer("Output: {\"value\": [num, den], \"text\": \"num/den\"}");
    auto* logic = hold<std::string>("luk");
    auto* point = hold<std::string>();
    auto* formula = hold<std::string>();
    s->add_option("--logic", *logic, "Semantics: godel, product, luk, boole, chain:m[:godel|:luk]");
    s->add_option("--point", *point, "Comma-separated rationals, e.g. 1/2,1/3");
    s->add_option("formula", *formula, "Formula text")->required();
    on(s, [=, this] {
      Semantics sem = Semantics::parse(*logic);
      Point p = point->empty() ? Point{} : parse_point(*point);
      Rational v = eval(parse_formula(*formula), sem, p);
      emit(Json{{"value", rational_json(v)}, {"text", rat_text(v)}}, rat_text(v));
      return 0;
    });
  }
  // taut
  {
    auto* s = app.add_subcommand("taut", "Decide whether a formula is a tautology");
    s->footer("Output: {\"verdict\": \"Tautology\"|\"Countermodel\"|\"Unknown\", \"point\", \"value\"}");
    auto* logic = hold<std::string>("luk");
    auto* method = hold<std::string>("exact-pwl");
    auto* formula = hold<std::string>();
    s->add_option("--logic", *logic, "Semantics");
    s->add_option("--method", *method, "truth-table, exact-pwl or grid[:N]");
    s->add_option("formula", *formula, "Formula text")->required();
    on(s, [=, this] {
      Verdict v = tautology_check(parse_formula(*formula), Semantics::parse(*logic), TautMethod::parse(*method),
                                  cap_or(kDefaultEnumerationCap));
      std::string text = v.name();
      if (v.kind == Verdict::Countermodel) text += " at " + point_str(v.point) + " value " + v.value.str();
      emit(verdict_json(v), text);
      return 0;
    });
  }
  // identity
  {
    auto* s = app.add_subcommand("identity", "Decide whether two formulas are semantically equal");
    s->footer("Output: same as taut, for (r -> s) & (s -> r)");
    auto* logic = hold<std::string>("luk");
    auto* method = hold<std::string>("exact-pwl");
    auto* r = hold<std::string>();
    auto* t = hold<std::string>();
    s->add_option("--logic", *logic, "Semantics");
    s->add_option("--method", *method, "truth-table, exact-pwl or grid[:N]");
    s->add_option("r", *r, "First formula")->required();
    s->add_option("s", *t, "Second formula")->required();
    on(s, [=, this] {
      Verdict v = identity_check(parse_formula(*r), parse_formula(*t), Semantics::parse(*logic),
                                 TautMethod::parse(*method), cap_or(kDefaultEnumerationCap));
      emit(verdict_json(v), v.name());
      return 0;
    });
  }
  // pwl
  {
    auto* s = app.add_subcommand("pwl", "Piecewise-linear functions");
    s->require_subcommand(1);
    auto* c = s->add_subcommand("compile", "Compile a formula to its exact PWL function");
    c->footer("Output: PWL JSON {\"dim\", \"vertices\", \"cells\", \"pieces\": [{\"a\", \"b\"}]}");
    auto* formula = hold<std::string>();
    auto* dim = hold<int>(0);
    c->add_option("formula", *formula)->required();
    c->add_option("--dim", *dim, "Dimension (default: formula arity, at least 1)");
    on(c, [=, this] {
      Formula f = parse_formula(*formula);
      int d = *dim ? *dim : std::max<int>(1, static_cast<int>(f.arity()));
      PwlFunction p = pwl_from_formula(f, d);
      emit(pwl_json(p), std::to_string(p.complex.size()) + " cells");
      return 0;
    });
    auto* i = s->add_subcommand("integrate", "Exact integral over a box");
    i->footer("Output: {\"value\": [num, den], \"text\", \"degenerate\"}");
    auto* iformula = hold<std::string>();
    auto* ifile = hold<std::string>();
    auto* box = hold<std::string>();
    auto* idim = hold<int>(0);
    i->add_option("--formula", *iformula, "Formula to integrate");
    i->add_option("--file", *ifile, "PWL JSON file to integrate");
    i->add_option("--box", *box, "Box lo:hi,lo:hi (default: unit cube)");
    i->add_option("--dim", *idim, "Dimension for --formula");
    on(i, [=, this] {
      PwlFunction p;
      if (!iformula->empty()) {
        Formula f = parse_formula(*iformula);
        p = pwl_from_formula(f, *idim ? *idim : std::max<int>(1, static_cast<int>(f.arity())));
      } else if (!ifile->empty()) {
        p = pwl_from_json(read_json_file(*ifile));
      } else {
        throw Usage("pwl integrate needs --formula or --file");
      }
      Box b = box->empty() ? Box::unit(p.dim()) : Box::parse(*box);
      Integral r = pwl_integral(p, b);
      emit(Json{{"value", rational_json(r.value)}, {"text", rat_text(r.value)}, {"degenerate", r.degenerate}},
           rat_text(r.value));
      return 0;
    });
    auto* y = s->add_subcommand("synthesize", "Synthesize a formula from a PWL function");
    y->footer("Output: {\"formula\": text, \"verified\": bool}");
    auto* yfile = hold<std::string>();
    y->add_option("file", *yfile, "PWL JSON file")->required();
    on(y, [=, this] {
      PwlFunction p = pwl_from_json(read_json_file(*yfile));
      Formula f = p.dim() == 1 ? pwl_to_formula_1d(p) : lattice_formula(p);
      bool ok = pwl_equal(pwl_from_formula(f, p.dim()), p);
      emit(Json{{"formula", print_formula(f)}, {"verified", ok}}, print_formula(f));
      return ok ? 0 : 1;
    });
  }
  // orbit
  {
    auto* s = app.add_subcommand("orbit", "Exact orbit of a rational point under a substitution");
    s->footer(
        "Output: {\"start\", \"cycle\", \"preperiod\", \"period\", \"max_steps\", \"points\", \"denominators\"}\n"
        "Substitutions: tent, tent2, tent:n, flip, identity[:n], odometer:n, rotation, or \"f0; f1\"");
    auto* subst = hold<std::string>();
    auto* start = hold<std::string>();
    auto* max = hold<std::size_t>(1000);
    s->add_option("--subst", *subst, "Substitution")->required();
    s->add_option("--start", *start, "Start point")->required();
    s->add_option("--max", *max, "Maximum number of steps");
    on(s, [=, this] {
      Orbit o = orbit(induced_map(substitution_spec(*subst)), parse_point(*start), *max);
      std::string text = o.cycle ? "preperiod " + std::to_string(o.preperiod) + " period " + std::to_string(o.period)
                                 : "no cycle within " + std::to_string(o.max_steps) + " steps";
      emit(orbit_json(o), text);
      return 0;
    });
  }
  // subst
  {
    auto* s = app.add_subcommand("subst", "Substitutions");
    s->require_subcommand(1);
    auto* a = s->add_subcommand("apply", "Apply a substitution to a formula");
    a->footer("Output: {\"formula\": text}");
    auto* sigma = hold<std::string>();
    auto* formula = hold<std::string>();
    auto* times = hold<std::size_t>(1);
    a->add_option("--subst", *sigma, "Substitution")->required();
    a->add_option("--times", *times, "Number of applications");
    a->add_option("formula", *formula)->required();
    on(a, [=, this] {
      Formula f = iterate_substitution(substitution_spec(*sigma), parse_formula(*formula), *times);
      emit(Json{{"formula", print_formula(f)}}, print_formula(f));
      return 0;
    });
    auto* c = s->add_subcommand("compose", "Composite x_i -> sigma(tau(x_i))");
    c->footer("Output: {\"substitution\": \"f0; f1; ...\"}");
    auto* cs = hold<std::string>();
    auto* ct = hold<std::string>();
    c->add_option("--sigma", *cs)->required();
    c->add_option("--tau", *ct)->required();
    on(c, [=, this] {
      Substitution r = compose_substitutions(substitution_spec(*cs), substitution_spec(*ct));
      emit(Json{{"substitution", r.str()}}, r.str());
      return 0;
    });
    auto* r = s->add_subcommand("reach", "Substitution sending p to q (den(q) must divide den(p))");
    r->footer("Output: {\"substitution\", \"image\", \"verified\"}");
    auto* from = hold<std::string>();
    auto* to = hold<std::string>();
    r->add_option("--from", *from)->required();
    r->add_option("--to", *to)->required();
    on(r, [=, this] {
      Point p = parse_point(*from), q = parse_point(*to);
      Substitution sg = reachability_substitution(p, q);
      Point img = induced_map(sg)(p);
      emit(Json{{"substitution", sg.str()}, {"image", point_json(img)}, {"verified", img == q}}, sg.str());
      return img == q ? 0 : 1;
    });
  }
  // homeo
  {
    auto* s = app.add_subcommand("homeo", "Piecewise-integral maps of the cube");
    s->require_subcommand(1);
    auto* b = s->add_subcommand("build", "Exact PWL form of a substitution of arity 1 or 2");
    b->footer("Output: {\"dim\", \"vertices\", \"cells\", \"pieces\": [{\"A\", \"B\"}]}");
    auto* bs = hold<std::string>();
    b->add_option("--subst", *bs)->required();
    on(b, [=, this] {
      emit(pwl_map_json(pwl_map_from_substitution(substitution_spec(*bs))));
      return 0;
    });
    auto* v = s->add_subcommand("validate", "Check that a substitution induces a homeomorphism");
    v->footer(
        "Output: {\"invertible\", \"common_det\", \"dets\", \"measure_preserving\", \"image_measure\", \"problem\"}");
    auto* vs = hold<std::string>();
    v->add_option("--subst", *vs)->required();
    on(v, [=, this] {
      HomeoReport r = validate_homeomorphism(pwl_map_from_substitution(substitution_spec(*vs)));
      emit(homeo_json(r), r.invertible ? "homeomorphism" : "not a homeomorphism: " + r.problem);
      return 0;
    });
    auto* t = s->add_subcommand("rotation", "The rotation homeomorphism of the square");
    t->footer("Output: {\"substitution\", \"map\", \"report\" (with --validate)}");
    auto* validate = hold<bool>(false);
    t->add_flag("--validate", *validate, "Also validate the map");
    on(t, [=, this] {
      Rotation rot = rotation_homeomorphism();
      Json j{{"substitution", rot.sigma.str()}, {"map", pwl_map_json(rot.map)}};
      std::string text = rot.sigma.str();
      if (*validate) {
        HomeoReport r = validate_homeomorphism(rot.map);
        j["report"] = homeo_json(r);
        text += r.invertible ? "\nhomeomorphism" : "\nnot a homeomorphism: " + r.problem;
      }
      emit(j, text);
      return 0;
    });
  }
  // diff
  {
    auto* s = app.add_subcommand("diff", "One-sided directional derivative of an induced map");
    s->footer("Output: {\"derivative\": point}");
    auto* subst = hold<std::string>();
    auto* point = hold<std::string>();
    auto* dir = hold<std::string>();
    s->add_option("--subst", *subst, "Substitution of arity 1 or 2")->required();
    s->add_option("--point", *point)->required();
    s->add_option("--dir", *dir, "Direction vector")->required();
    on(s, [=, this] {
      PwlMap m = *subst == "rotation" ? rotation_homeomorphism().map : pwl_map_from_substitution(substitution_spec(*subst));
      Point d = tsujii_differential(m, parse_point(*point), parse_point(*dir));
      emit(Json{{"derivative", point_json(d)}}, point_str(d));
      return 0;
    });
  }
  // boxhit
  {
    auto* s = app.add_subcommand("boxhit", "Search (h, k) with R^k(Q^h(a)) in B for a grid point a in A");
    s->footer("Output: {\"found\", \"h\", \"k\", \"witness\"}");
    auto* q = hold<std::string>();
    auto* r = hold<std::string>();
    auto* a = hold<std::string>();
    auto* b = hold<std::string>();
    auto* hmax = hold<std::size_t>(12);
    auto* kmax = hold<std::size_t>(12);
    auto* grid = hold<long>(64);
    s->add_option("--q", *q, "Substitution Q")->required();
    s->add_option("--r", *r, "Substitution R")->required();
    s->add_option("--a", *a, "Open box A, lo:hi,...")->required();
    s->add_option("--b", *b, "Open box B")->required();
    s->add_option("--hmax", *hmax);
    s->add_option("--kmax", *kmax);
    s->add_option("--grid", *grid, "Grid denominator for points of A");
    on(s, [=, this] {
      auto hit = box_hitting_search(induced_map(substitution_spec(*q)), induced_map(substitution_spec(*r)),
                                    Box::parse(*a), Box::parse(*b), *hmax, *kmax, *grid, g_.threads);
      if (!hit) {
        emit(Json{{"found", false}}, "not found");
        return 0;
      }
      emit(Json{{"found", true}, {"h", hit->h}, {"k", hit->k}, {"witness", point_json(hit->witness)}},
           "h=" + std::to_string(hit->h) + " k=" + std::to_string(hit->k) + " at " + point_str(hit->witness));
      return 0;
    });
  }
  // stats
  {
    auto* s = app.add_subcommand("stats", "Empirical visit frequencies of a float orbit");
    s->footer("Output (csv, default): box,i_0[,i_1],frequency,expected,discrepancy");
    auto* subst = hold<std::string>();
    auto* start = hold<std::string>();
    auto* iters = hold<std::size_t>(1000000);
    auto* boxes = hold<std::size_t>(16);
    auto* jitter = hold<double>(1e-12);
    s->add_option("--subst", *subst)->required();
    s->add_option("--start", *start, "Start point (default 0.1234 per coordinate)");
    s->add_option("--iterations", *iters);
    s->add_option("--boxes", *boxes, "Boxes per axis");
    s->add_option("--jitter", *jitter, "Per-step jitter amplitude (0 disables)");
    on(s, [=, this] {
      InducedMap S = induced_map(substitution_spec(*subst));
      std::vector<double> x = start->empty() ? std::vector<double>(S.arity(), 0.1234) : parse_doubles(*start);
      Statistics st = empirical_statistics(S, x, *iters, *boxes, g_.seed, *jitter);
      double expected = 1.0 / double(st.frequency.size());
      if (!g_.format_given || g_.format == "csv") {
        out_ << "box";
        for (std::size_t i = 0; i < S.arity(); ++i) out_ << ",i_" << i;
        out_ << ",frequency,expected,discrepancy\n";
        char buf[128];
        for (std::size_t k = 0; k < st.frequency.size(); ++k) {
          out_ << k;
          std::size_t rem = k, stride = st.frequency.size();
          for (std::size_t i = 0; i < S.arity(); ++i) {
            stride /= st.boxes_per_axis;
            out_ << ',' << rem / stride;
            rem %= stride;
          }
          std::snprintf(buf, sizeof buf, ",%.9f,%.9f,%.9f", st.frequency[k], expected,
                        std::abs(st.frequency[k] - expected));
          out_ << buf << '\n';
        }
        return 0;
      }
      emit(Json{{"boxes_per_axis", st.boxes_per_axis},
                {"iterations", st.iterations},
                {"max_discrepancy", st.max_discrepancy},
                {"frequency", st.frequency}},
           "max discrepancy " + std::to_string(st.max_discrepancy));
      return 0;
    });
  }
  // avg
  {
    auto* s = app.add_subcommand("avg", "Exact average truth values of sigma^j(r) over a box");
    s->footer("Output: {\"sequence\": [[num, den], ...], \"f_lambda\": [num, den]}");
    auto* formula = hold<std::string>();
    auto* subst = hold<std::string>();
    auto* box = hold<std::string>();
    auto* k = hold<std::size_t>(4);
    s->add_option("--formula", *formula)->required();
    s->add_option("--subst", *subst)->required();
    s->add_option("--box", *box, "Box carrying the uniform measure")->required();
    s->add_option("--k", *k, "Last exponent");
    on(s, [=, this] {
      AverageTruth a = average_truth_value(parse_formula(*formula), *k, substitution_spec(*subst), Box::parse(*box),
                                           cap_or(200'000));
      Json seq = Json::array();
      std::string text;
      for (const auto& v : a.sequence) {
        seq.push_back(rational_json(v));
        text += (text.empty() ? "" : " ") + v.str();
      }
      emit(Json{{"sequence", seq}, {"f_lambda", rational_json(a.f_lambda)}}, text + "\nf_lambda " + a.f_lambda.str());
      return 0;
    });
  }
  // odometer
  {
    auto* s = app.add_subcommand("odometer", "The odometer substitution on Boolean valuations");
    s->require_subcommand(1);
    auto* p = s->add_subcommand("perm", "Induced permutation of the 2^n valuations");
    p->footer("Output: {\"n\", \"substitution\", \"image\", \"cycle_lengths\", \"plus_one\": true}");
    auto* n = hold<std::size_t>(2);
    p->add_option("--n", *n)->required();
    on(p, [=, this] {
      BoolPermutation perm = odometer_induced_permutation(*n, cap_or(kDefaultTableCap));
      auto cycles = perm.cycle_lengths();
      emit(Json{{"n", *n},
                {"substitution", odometer_substitution(*n).str()},
                {"image", perm.image},
                {"cycle_lengths", cycles},
                {"plus_one", true}},
           std::to_string(cycles.size()) + " cycle(s), longest " + std::to_string(cycles.front()));
      return 0;
    });
    auto* d = s->add_subcommand("derive", "Derive a target from a non-tautology by MP and the odometer");
    d->footer("Output: proof in JSON lines (see prove check)");
    auto* dn = hold<std::size_t>(1);
    auto* r = hold<std::string>();
    auto* target = hold<std::string>("0");
    d->add_option("--n", *dn)->required();
    d->add_option("--r", *r, "Hypothesis (not a tautology)")->required();
    d->add_option("--target", *target, "Formula to derive");
    on(d, [=, this] {
      Proof pr = derive_from_nontautology(parse_formula(*r), parse_formula(*target), *dn,
                                          cap_or(kDefaultDerivationCap));
      out_ << write_proof(pr);
      return 0;
    });
  }
  // prove
  {
    auto* s = app.add_subcommand("prove", "Proof checking");
    s->require_subcommand(1);
    auto* c = s->add_subcommand("check", "Check a proof in JSON lines; exit 0 valid, 1 invalid, 2 malformed");
    c->footer("Output: {\"valid\", \"line\", \"reason\"}");
    auto* file = hold<std::string>("-");
    auto* logic = hold<std::string>("boole");
    auto* strict = hold<bool>(false);
    auto* no_oracle = hold<bool>(false);
    c->add_option("file", *file, "Proof file, - for standard input");
    c->add_option("--logic", *logic, "mv, product, godel or boole");
    c->add_flag("--strict", *strict, "Axiom lines must equal a schema verbatim");
    c->add_flag("--no-oracle", *no_oracle, "Do not accept axioms by the tautology oracle");
    on(c, [=, this] {
      AxiomSet ax = builtin_axioms(parse_logic(*logic));
      ax.strict = *strict;
      ax.use_oracle = !*no_oracle;
      Proof p;
      try {
        std::istringstream in(read_file(*file));
        p = read_proof(in);
      } catch (const MalformedProof& e) {
        err_ << "error: " << e.what() << '\n';
        return 2;
      }
      ProofVerdict v = check_proof(p, ax);
      Json j{{"valid", v.valid}};
      if (!v.valid) {
        j["line"] = v.line;
        j["reason"] = v.reason;
      }
      emit(j, v.valid ? "Valid" : "InvalidAt(" + std::to_string(v.line) + ", " + v.reason + ")");
      return v.valid ? 0 : 1;
    });
  }
  // algebra
  {
    auto* s = app.add_subcommand("algebra", "Finite algebras");
    s->require_subcommand(1);
    s->footer("Algebra specs: 2, chain:m[:luk|:godel], free:n, json:path, products joined by '*'");
    auto* c = s->add_subcommand("chain", "Finite chain {0, 1/m, ..., 1}");
    c->footer("Output: algebra JSON {\"names\", \"star\", \"impl\", \"zero\", \"one\"}");
    auto* m = hold<long>(1);
    auto* base = hold<std::string>("luk");
    c->add_option("--m", *m)->required();
    c->add_option("--base", *base, "luk or godel")->check(CLI::IsMember({"luk", "godel"}));
    on(c, [=, this] {
      emit(algebra_json(algebra_spec("chain:" + std::to_string(*m) + ":" + *base, cap_or(kDefaultAlgebraCap))));
      return 0;
    });
    auto* p = s->add_subcommand("product", "Componentwise product");
    p->footer("Output: algebra JSON");
    auto* a = hold<std::string>();
    auto* b = hold<std::string>();
    p->add_option("a", *a)->required();
    p->add_option("b", *b)->required();
    on(p, [=, this] {
      std::size_t cap = cap_or(kDefaultAlgebraCap);
      emit(algebra_json(product_algebra(algebra_spec(*a, cap), algebra_spec(*b, cap), cap)));
      return 0;
    });
    auto* u = s->add_subcommand("sub", "Subalgebra generated by named elements");
    u->footer("Output: {\"elements\": [names], \"algebra\": algebra JSON}");
    auto* ua = hold<std::string>();
    auto* gens = hold<std::vector<std::string>>();
    u->add_option("algebra", *ua)->required();
    u->add_option("--gens", *gens, "Generator names")->delimiter(',');
    on(u, [=, this] {
      FiniteAlgebra alg = algebra_spec(*ua, cap_or(kDefaultAlgebraCap));
      std::vector<std::size_t> g;
      for (const auto& nm : *gens) g.push_back(alg.index_of(nm));
      Subalgebra sa = subalgebra_generated(alg, g);
      Json names = Json::array();
      for (auto x : sa.elements) names.push_back(alg.name(x));
      std::string text;
      for (const auto& nm : names) text += (text.empty() ? "" : " ") + nm.get<std::string>();
      emit(Json{{"elements", names}, {"algebra", algebra_json(sa.algebra)}}, text);
      return 0;
    });
  }
  // filters
  {
    auto* s = app.add_subcommand("filters", "All, prime and maximal filters of a finite algebra");
    s->footer("Output: {\"filters\", \"primes\", \"maximals\"} as lists of element names");
    auto* a = hold<std::string>();
    s->add_option("algebra", *a)->required();
    on(s, [=, this] {
      FiniteAlgebra alg = algebra_spec(*a, cap_or(kDefaultAlgebraCap));
      FilterEnumeration e = enumerate_filters(alg, cap_or(kDefaultAlgebraCap));
      Json j;
      for (auto [key, list] : {std::pair{"filters", &e.filters}, {"primes", &e.primes}, {"maximals", &e.maximals}}) {
        Json arr = Json::array();
        for (const auto& f : *list) arr.push_back(names_of(alg, f));
        j[key] = arr;
      }
      emit(j, std::to_string(e.filters.size()) + " filters, " + std::to_string(e.primes.size()) + " prime, " +
                  std::to_string(e.maximals.size()) + " maximal");
      return 0;
    });
  }
  // spec
  {
    auto* s = app.add_subcommand("spec", "Prime spectrum with the hull-kernel topology");
    s->footer("Output: {\"points\", \"order\", \"basic_opens\", \"open_count\", \"order_is_forest\", \"closures_ok\"}");
    auto* a = hold<std::string>();
    s->add_option("algebra", *a)->required();
    on(s, [=, this] {
      FiniteAlgebra alg = algebra_spec(*a, cap_or(kDefaultAlgebraCap));
      SpecSpace sp = spec_space(alg, cap_or(kDefaultAlgebraCap));
      emit(spec_json(alg, sp), std::to_string(sp.points.size()) + " points, " + std::to_string(sp.opens.size()) +
                                   " open sets");
      return 0;
    });
  }
  // duality
  {
    auto* s = app.add_subcommand("duality", "Filter/open-set duality and prime-filter characterizations");
    s->footer(
        "Output: {\"filters\", \"opens\", \"counts_match\", \"order_isomorphism\", \"meet_join_laws\", "
        "\"kernel_hull\", \"hull_kernel\", \"prime_characterizations\", \"discrepancies\", \"ok\"}");
    auto* a = hold<std::string>();
    s->add_option("algebra", *a)->required();
    on(s, [=, this] {
      FiniteAlgebra alg = algebra_spec(*a, cap_or(kDefaultAlgebraCap));
      DualityReport d = duality_check(alg, cap_or(kDefaultAlgebraCap));
      Lemma7Report l = lemma7_check(alg, cap_or(kDefaultAlgebraCap));
      bool ok = d.ok() && l.ok();
      emit(Json{{"filters", d.filter_count},
                {"opens", d.open_count},
                {"counts_match", d.counts_match},
                {"order_isomorphism", d.order_isomorphism},
                {"meet_join_laws", d.meet_join_laws},
                {"kernel_hull", d.kernel_hull},
                {"hull_kernel", d.hull_kernel},
                {"prime_characterizations", l.rows.size()},
                {"discrepancies", l.discrepancies},
                {"ok", ok}},
           ok ? "ok" : "FAILED");
      return ok ? 0 : 1;
    });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out_, err_);
    return 2;
  }
  if (!action) {
    err_ << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const Usage& e) {
    err_ << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err_ << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.main(args);
}

}  // namespace mvdyn::cli
