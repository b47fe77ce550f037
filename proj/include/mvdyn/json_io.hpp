#pragma once

#include "json.hpp"
#include "mvdyn/algebra.hpp"
#include "mvdyn/dynamics.hpp"
#include "mvdyn/pwl.hpp"
#include "mvdyn/spectra.hpp"
#include "mvdyn/tautology.hpp"

namespace mvdyn {

using Json = nlohmann::ordered_json;

// Integers as JSON numbers when they fit in 64 bits, else decimal strings.
Json integer_json(const Integer& z);
Integer integer_from_json(const Json& j);
// Rationals as [num, den]; "n/d" strings are accepted on input.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json point_json(const Point& p);
Point point_from_json(const Json& j);

Json complex_json(const CellComplex& c);
CellComplex complex_from_json(const Json& j);
// {"dim", "vertices", "cells", "pieces": [{"a": [...], "b": ...}]}
Json pwl_json(const PwlFunction& f);
PwlFunction pwl_from_json(const Json& j);  // validated
// {"dim", "vertices", "cells", "pieces": [{"A": [[...]], "B": [...]}]}
Json pwl_map_json(const PwlMap& m);

Json verdict_json(const Verdict& v);
Json orbit_json(const Orbit& o);
Json homeo_json(const HomeoReport& r);

// {"names": [...], "star": [[...]], "impl": [[...]], "zero": i, "one": j}
Json algebra_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const Json& j);  // validated
Json element_set_json(const ElementSet& s);
Json spec_json(const FiniteAlgebra& a, const SpecSpace& s);

}  // namespace mvdyn
