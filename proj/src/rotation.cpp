#include <map>

#include "mvdyn/dynamics.hpp"
#include "mvdyn/errors.hpp"

namespace mvdyn {

namespace {

Point pt(long a, long b, long c, long d) { return {Rational(Integer(a), Integer(b)), Rational(Integer(c), Integer(d))}; }

}  // namespace

Rotation rotation_homeomorphism() {
  // vertices: corners, inner triangle p0 p1 p2 and its mirror q_i = (1,1) - p_i
  enum { C00, C10, C11, C01, P0, P1, P2, Q0, Q1, Q2 };
  std::vector<Point> V = {pt(0, 1, 0, 1), pt(1, 1, 0, 1), pt(1, 1, 1, 1), pt(0, 1, 1, 1), pt(1, 4, 1, 4),
                          pt(1, 2, 1, 4), pt(1, 4, 1, 2), pt(3, 4, 3, 4), pt(1, 2, 3, 4), pt(3, 4, 1, 2)};
  std::vector<std::size_t> image = {C00, C10, C11, C01, P1, P2, P0, Q1, Q2, Q0};
  std::vector<std::vector<std::size_t>> cells = {
      {C00, C01, P2}, {C00, C10, P0}, {C00, P0, P2}, {C01, C11, Q0}, {C01, P1, P2},
      {C01, P1, Q1},  {C01, Q0, Q1},  {C10, C11, Q2}, {C10, P0, P1},  {C10, P1, Q1},
      {C10, Q1, Q2},  {C11, Q0, Q2},  {P0, P1, P2},  {Q0, Q1, Q2}};
  Rotation rot;
  rot.map.complex.dim = 2;
  rot.map.complex.vertices = V;
  rot.map.complex.cells = cells;
  for (const auto& cell : cells) {
    std::vector<Point> src, dst;
    for (auto v : cell) {
      src.push_back(V[v]);
      dst.push_back(V[image[v]]);
    }
    RationalAffineMap m = affine_from_simplex_pair(src, dst);
    if (!m.integral()) throw InternalError("rotation triangulation yields a non-integral cell map");
    AffineMapZ z;
    for (const auto& row : m.A) {
      z.A.emplace_back();
      for (const auto& x : row) z.A.back().push_back(x.numerator());
    }
    for (const auto& x : m.B) z.B.push_back(x.numerator());
    rot.map.pieces.push_back(z);
  }
  if (auto p = pwl_map_problem(rot.map); !p.empty()) throw InternalError("rotation map invalid: " + p);
  std::vector<Formula> images;
  for (std::size_t i = 0; i < 2; ++i) {
    PwlFunction comp = rot.map.component(i);
    Formula f = lattice_formula(comp);
    if (!pwl_equal(pwl_from_formula(f, 2), comp)) throw InternalError("rotation component synthesis failed");
    images.push_back(f);
  }
  rot.sigma = Substitution(std::move(images));
  rot.inner = {V[P0], V[P1], V[P2], V[Q0], V[Q1], V[Q2]};
  return rot;
}

}  // namespace mvdyn
