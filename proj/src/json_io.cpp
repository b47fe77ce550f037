#include "mvdyn/json_io.hpp"

#include "mvdyn/errors.hpp"

namespace mvdyn {

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw DomainError("bad integer '" + j.get<std::string>() + "'");
    return z;
  }
  throw DomainError("expected an integer");
}

Json rational_json(const Rational& q) { return Json::array({integer_json(q.numerator()), integer_json(q.denominator())}); }

Rational rational_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return Rational(integer_from_json(j[0]), integer_from_json(j[1]));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw DomainError("expected a rational [num, den]");
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(rational_json(x));
  return a;
}

Point point_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected a point");
  Point p;
  for (const auto& x : j) p.push_back(rational_from_json(x));
  return p;
}

Json complex_json(const CellComplex& c) {
  Json v = Json::array(), cells = Json::array();
  for (const auto& p : c.vertices) v.push_back(point_json(p));
  for (const auto& cell : c.cells) cells.push_back(cell);
  return Json{{"dim", c.dim}, {"vertices", v}, {"cells", cells}};
}

CellComplex complex_from_json(const Json& j) {
  try {
    CellComplex c;
    c.dim = j.at("dim").get<int>();
    for (const auto& p : j.at("vertices")) c.vertices.push_back(point_from_json(p));
    for (const auto& cell : j.at("cells")) c.cells.push_back(cell.get<std::vector<std::size_t>>());
    validate_complex(c);
    return c;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed complex: ") + e.what());
  }
}

Json pwl_json(const PwlFunction& f) {
  Json j = complex_json(f.complex);
  Json pieces = Json::array();
  for (const auto& p : f.pieces) {
    Json a = Json::array();
    for (const auto& c : p.a) a.push_back(integer_json(c));
    pieces.push_back(Json{{"a", a}, {"b", integer_json(p.b)}});
  }
  j["pieces"] = pieces;
  return j;
}

PwlFunction pwl_from_json(const Json& j) {
  try {
    PwlFunction f;
    f.complex = complex_from_json(j);
    for (const auto& p : j.at("pieces")) {
      AffinePiece piece;
      for (const auto& c : p.at("a")) piece.a.push_back(integer_from_json(c));
      piece.b = integer_from_json(p.at("b"));
      f.pieces.push_back(std::move(piece));
    }
    validate_pwl(f);
    return f;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed PWL function: ") + e.what());
  }
}

Json pwl_map_json(const PwlMap& m) {
  Json j = complex_json(m.complex);
  Json pieces = Json::array();
  for (const auto& p : m.pieces) {
    Json A = Json::array(), B = Json::array();
    for (const auto& row : p.A) {
      Json r = Json::array();
      for (const auto& c : row) r.push_back(integer_json(c));
      A.push_back(r);
    }
    for (const auto& c : p.B) B.push_back(integer_json(c));
    pieces.push_back(Json{{"A", A}, {"B", B}});
  }
  j["pieces"] = pieces;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j{{"verdict", v.name()}};
  if (v.kind == Verdict::Countermodel) {
    j["point"] = point_json(v.point);
    j["value"] = rational_json(v.value);
  }
  return j;
}

Json orbit_json(const Orbit& o) {
  Json pts = Json::array(), dens = Json::array();
  for (const auto& p : o.points) pts.push_back(point_json(p));
  for (const auto& d : o.denominators) dens.push_back(integer_json(d));
  Json j{{"start", point_json(o.start)}, {"cycle", o.cycle}};
  if (o.cycle) {
    j["preperiod"] = o.preperiod;
    j["period"] = o.period;
  } else {
    j["preperiod"] = nullptr;
    j["period"] = nullptr;
  }
  j["max_steps"] = o.max_steps;
  j["points"] = pts;
  j["denominators"] = dens;
  return j;
}

Json homeo_json(const HomeoReport& r) {
  Json j{{"invertible", r.invertible}};
  j["common_det"] = r.common_det ? Json(*r.common_det) : Json(nullptr);
  j["dets"] = r.dets;
  j["measure_preserving"] = r.measure_preserving;
  j["image_measure"] = rational_json(r.image_measure);
  j["problem"] = r.problem;
  return j;
}

Json algebra_json(const FiniteAlgebra& a) {
  return Json{{"names", a.names()}, {"star", a.star_table()}, {"impl", a.impl_table()},
              {"zero", a.zero()},   {"one", a.one()}};
}

FiniteAlgebra algebra_from_json(const Json& j) {
  try {
    FiniteAlgebra a(j.at("names").get<std::vector<std::string>>(), j.at("star").get<Table>(),
                    j.at("impl").get<Table>(), j.at("zero").get<std::size_t>(), j.at("one").get<std::size_t>());
    if (auto p = a.problem(); !p.empty()) throw DomainError("not an algebra: " + p);
    return a;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed algebra: ") + e.what());
  }
}

Json element_set_json(const ElementSet& s) { return members(s); }

Json spec_json(const FiniteAlgebra& a, const SpecSpace& s) {
  Json points = Json::array(), order = Json::array(), basic = Json::array();
  for (const auto& p : s.points) points.push_back(element_set_json(p));
  for (std::size_t p = 0; p < s.points.size(); ++p)
    for (std::size_t q = 0; q < s.points.size(); ++q)
      if (p != q && s.below[p][q]) order.push_back({p, q});
  for (std::size_t x = 0; x < a.size(); ++x) {
    Json o = Json::array();
    for (std::size_t p = 0; p < s.points.size(); ++p)
      if (s.basic[x].test(p)) o.push_back(p);
    basic.push_back(Json{{"element", a.name(x)}, {"points", o}});
  }
  return Json{{"points", points},          {"order", order}, {"basic_opens", basic},
              {"open_count", s.opens.size()}, {"order_is_forest", s.order_is_forest},
              {"closures_ok", s.closures_ok}};
}

}  // namespace mvdyn
