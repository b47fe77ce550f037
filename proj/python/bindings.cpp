#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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
#include "mvdyn/tautology.hpp"

namespace py = pybind11;
using namespace mvdyn;

namespace {

py::object fraction_type() { return py::module_::import("fractions").attr("Fraction"); }

py::object to_py(const Rational& q) { return fraction_type()(py::str(q.str())); }

py::list to_py(const Point& p) {
  py::list out;
  for (const auto& x : p) out.append(to_py(x));
  return out;
}

// Accepts int, Fraction or "a/b" strings.
Rational from_py(const py::handle& h) { return Rational::parse(py::str(h).cast<std::string>()); }

Point point_from_py(const py::sequence& s) {
  Point p;
  for (const auto& h : s) p.push_back(from_py(h));
  return p;
}

py::object json_to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Formula as_formula(const py::handle& h) {
  if (py::isinstance<Formula>(h)) return h.cast<Formula>();
  return parse_formula(h.cast<std::string>());
}

Substitution as_substitution(const py::handle& h) {
  if (py::isinstance<Substitution>(h)) return h.cast<Substitution>();
  std::string s = h.cast<std::string>();
  if (s == "rotation") return rotation_homeomorphism().sigma;
  return named_substitution(s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact many-valued logic, piecewise-linear functions and substitution dynamics";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<Formula>(m, "Formula")
      .def(py::init([](const std::string& text) { return parse_formula(text); }))
      .def("__str__", [](const Formula& f) { return print_formula(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + print_formula(f) + "')"; })
      .def("unicode", [](const Formula& f) { return print_formula(f, PrintStyle::Unicode); })
      .def("variables", &Formula::variables)
      .def("desugar", &Formula::desugar)
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; });

  m.def("parse_formula", [](const std::string& text) { return parse_formula(text); });

  m.def(
      "eval",
      [](const py::object& f, const py::sequence& point, const std::string& logic) {
        return to_py(eval(as_formula(f), Semantics::parse(logic), point_from_py(point)));
      },
      py::arg("formula"), py::arg("point"), py::arg("logic") = "luk");

  m.def(
      "tautology",
      [](const py::object& f, const std::string& logic, const std::string& method) {
        return json_to_py(verdict_json(tautology_check(as_formula(f), Semantics::parse(logic), TautMethod::parse(method))));
      },
      py::arg("formula"), py::arg("logic") = "luk", py::arg("method") = "exact-pwl");

  m.def(
      "identity",
      [](const py::object& r, const py::object& s, const std::string& logic, const std::string& method) {
        return json_to_py(verdict_json(
            identity_check(as_formula(r), as_formula(s), Semantics::parse(logic), TautMethod::parse(method))));
      },
      py::arg("r"), py::arg("s"), py::arg("logic") = "luk", py::arg("method") = "exact-pwl");

  py::class_<Substitution>(m, "Substitution")
      .def(py::init([](const std::string& spec) { return as_substitution(py::str(spec)); }))
      .def("apply", [](const Substitution& s, const py::object& f) { return s.apply(as_formula(f)); })
      .def("__call__",
           [](const Substitution& s, const py::sequence& p) { return to_py(map_eval(induced_map(s), point_from_py(p))); })
      .def_property_readonly("arity", &Substitution::arity)
      .def("__str__", &Substitution::str);

  m.def("compose", [](const Substitution& a, const Substitution& b) { return compose_substitutions(a, b); });

  py::class_<PwlFunction>(m, "PwlFunction")
      .def(py::init([](const py::object& f, int dim) { return pwl_from_formula(as_formula(f), dim); }),
           py::arg("formula"), py::arg("dim"))
      .def_property_readonly("dim", &PwlFunction::dim)
      .def_property_readonly("cells", [](const PwlFunction& f) { return f.complex.size(); })
      .def("__call__", [](const PwlFunction& f, const py::sequence& p) { return to_py(pwl_eval(f, point_from_py(p))); })
      .def(
          "integral",
          [](const PwlFunction& f, const std::string& box) {
            return to_py(pwl_integral(f, box.empty() ? Box::unit(f.dim()) : Box::parse(box)).value);
          },
          py::arg("box") = "")
      .def("min_value", [](const PwlFunction& f) { return to_py(pwl_min_value(f).value); })
      .def("equals", &pwl_equal)
      .def("to_formula",
           [](const PwlFunction& f) { return f.dim() == 1 ? pwl_to_formula_1d(f) : lattice_formula(f); })
      .def("to_json", [](const PwlFunction& f) { return json_to_py(pwl_json(f)); })
      .def_static("from_json", [](const py::object& j) {
        return pwl_from_json(Json::parse(py::module_::import("json").attr("dumps")(j).cast<std::string>()));
      });

  m.def("denominator", [](const py::sequence& p) { return denominator(point_from_py(p)).get_str(); });

  m.def(
      "orbit",
      [](const py::object& sigma, const py::sequence& start, std::size_t max_steps) {
        return json_to_py(orbit_json(orbit(induced_map(as_substitution(sigma)), point_from_py(start), max_steps)));
      },
      py::arg("sigma"), py::arg("start"), py::arg("max_steps") = 10000);

  m.def("reach", [](const py::sequence& p, const py::sequence& q) {
    return reachability_substitution(point_from_py(p), point_from_py(q));
  });

  m.def("validate_homeomorphism", [](const py::object& sigma) {
    InducedMap S = induced_map(as_substitution(sigma));
    if (!S.pwl()) throw DomainError("homeomorphism validation needs at most 2 variables");
    return json_to_py(homeo_json(validate_homeomorphism(*S.pwl())));
  });

  m.def("differential", [](const py::object& sigma, const py::sequence& p, const py::sequence& v) {
    InducedMap S = induced_map(as_substitution(sigma));
    if (!S.pwl()) throw DomainError("differentials need at most 2 variables");
    return to_py(tsujii_differential(*S.pwl(), point_from_py(p), point_from_py(v)));
  });

  m.def(
      "average_truth",
      [](const py::object& f, const py::object& sigma, const std::string& box, std::size_t k) {
        AverageTruth a = average_truth_value(as_formula(f), k, as_substitution(sigma), Box::parse(box));
        py::list seq;
        for (const auto& v : a.sequence) seq.append(to_py(v));
        return py::make_tuple(seq, to_py(a.f_lambda));
      },
      py::arg("formula"), py::arg("sigma"), py::arg("box"), py::arg("k"));

  m.def(
      "statistics",
      [](const py::object& sigma, std::vector<double> start, std::size_t iterations, std::size_t boxes,
         std::uint64_t seed) {
        Statistics s = empirical_statistics(induced_map(as_substitution(sigma)), std::move(start), iterations, boxes, seed);
        return py::make_tuple(s.frequency, s.max_discrepancy);
      },
      py::arg("sigma"), py::arg("start"), py::arg("iterations") = 1'000'000, py::arg("boxes_per_axis") = 16,
      py::arg("seed") = 1);

  m.def("odometer_permutation", [](std::size_t n) { return odometer_induced_permutation(n).image; });

  m.def(
      "derive",
      [](const py::object& r, const py::object& target, std::size_t n) {
        return write_proof(derive_from_nontautology(as_formula(r), as_formula(target), n));
      },
      py::arg("r"), py::arg("target"), py::arg("n"));

  m.def(
      "check_proof",
      [](const std::string& text, const std::string& logic) {
        std::istringstream in(text);
        ProofVerdict v = check_proof(read_proof(in), builtin_axioms(parse_logic(logic)));
        py::dict d;
        d["valid"] = v.valid;
        d["line"] = v.line;
        d["reason"] = v.reason;
        return d;
      },
      py::arg("text"), py::arg("logic") = "mv");

  py::class_<FiniteAlgebra>(m, "Algebra")
      .def_static(
          "chain", [](long k, const std::string& base) { return finite_chain(k, base == "godel" ? TNorm::Godel : TNorm::Lukasiewicz); },
          py::arg("m"), py::arg("base") = "luk")
      .def_static("boolean", &boolean_algebra2)
      .def_static("free_boolean", [](std::size_t n) { return free_boolean(n); })
      .def("__mul__", [](const FiniteAlgebra& a, const FiniteAlgebra& b) { return product_algebra(a, b); })
      .def("__len__", &FiniteAlgebra::size)
      .def_property_readonly("names", &FiniteAlgebra::names)
      .def("filters",
           [](const FiniteAlgebra& a) {
             FilterEnumeration e = enumerate_filters(a);
             auto names = [&](const std::vector<ElementSet>& v) {
               py::list out;
               for (const auto& s : v) {
                 py::list set;
                 for (auto x : members(s)) set.append(a.name(x));
                 out.append(set);
               }
               return out;
             };
             py::dict d;
             d["filters"] = names(e.filters);
             d["primes"] = names(e.primes);
             d["maximals"] = names(e.maximals);
             return d;
           })
      .def("duality_ok", [](const FiniteAlgebra& a) { return duality_check(a).ok(); })
      .def("prime_clauses_agree", [](const FiniteAlgebra& a) { return lemma7_check(a).ok(); })
      .def("to_json", [](const FiniteAlgebra& a) { return json_to_py(algebra_json(a)); });
}
