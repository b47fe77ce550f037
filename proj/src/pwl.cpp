#include "mvdyn/pwl.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>

#include "mesh.hpp"
#include "mvdyn/errors.hpp"

namespace mvdyn {

Rational AffinePiece::eval(const Point& p) const {
  Rational v(b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) v += Rational(a[i]) * p[i];
  return v;
}

AffinePiece AffinePiece::constant(int dim, long c) {
  return AffinePiece{std::vector<Integer>(static_cast<std::size_t>(dim), Integer(0)), Integer(c)};
}

AffinePiece AffinePiece::coordinate(int dim, std::size_t i) {
  AffinePiece p = constant(dim, 0);
  p.a.at(i) = 1;
  return p;
}

Rational PwlFunction::eval(const Point& p) const { return pwl_eval(*this, p); }

PwlFunction PwlFunction::constant(int dim, long c) {
  PwlFunction f{CellComplex::unit(dim), {}};
  f.pieces.assign(f.complex.size(), AffinePiece::constant(dim, c));
  return f;
}

PwlFunction PwlFunction::coordinate(int dim, std::size_t i) {
  if (i >= static_cast<std::size_t>(dim)) throw DomainError("coordinate index exceeds dimension");
  PwlFunction f{CellComplex::unit(dim), {}};
  f.pieces.assign(f.complex.size(), AffinePiece::coordinate(dim, i));
  return f;
}

std::string pwl_problem(const PwlFunction& f) {
  if (auto p = complex_problem(f.complex); !p.empty()) return p;
  if (f.pieces.size() != f.complex.size()) return "piece count differs from cell count";
  std::map<std::size_t, Rational> at;
  for (std::size_t k = 0; k < f.complex.size(); ++k) {
    if (f.pieces[k].a.size() != static_cast<std::size_t>(f.dim())) return "piece " + std::to_string(k) + " has wrong arity";
    for (auto v : f.complex.cells[k]) {
      Rational val = f.pieces[k].eval(f.complex.vertices[v]);
      if (val.sign() < 0 || val > Rational(1))
        return "value " + val.str() + " outside [0,1] at vertex " + point_str(f.complex.vertices[v]);
      auto [it, fresh] = at.emplace(v, val);
      if (!fresh && it->second != val) return "discontinuity at vertex " + point_str(f.complex.vertices[v]);
    }
  }
  // coincident vertices stored twice must also agree
  std::map<Point, Rational> by_point;
  for (const auto& [v, val] : at) {
    auto [it, fresh] = by_point.emplace(f.complex.vertices[v], val);
    if (!fresh && it->second != val) return "discontinuity at vertex " + point_str(f.complex.vertices[v]);
  }
  return {};
}

void validate_pwl(const PwlFunction& f) {
  if (auto p = pwl_problem(f); !p.empty()) throw DomainError("invalid PWL function: " + p);
}

namespace {

AffinePiece add(const AffinePiece& x, const AffinePiece& y) {
  AffinePiece r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  r.b += y.b;
  return r;
}

AffinePiece sub(const AffinePiece& x, const AffinePiece& y) {
  AffinePiece r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  r.b -= y.b;
  return r;
}

AffinePiece plus_const(AffinePiece x, long c) {
  x.b += c;
  return x;
}

AffinePiece one_minus(const AffinePiece& x) {
  AffinePiece r = x;
  for (auto& c : r.a) c = -c;
  r.b = 1 - x.b;
  return r;
}

// result = delta >= 0 ? pos : neg
struct Choice {
  AffinePiece delta, pos, neg;
};

Choice choose(PwlOp op, const AffinePiece& f, const AffinePiece& g) {
  int d = static_cast<int>(f.a.size());
  switch (op) {
    case PwlOp::Min: return {sub(f, g), g, f};
    case PwlOp::Max: return {sub(f, g), f, g};
    case PwlOp::Star: {
      auto s = plus_const(add(f, g), -1);
      return {s, s, AffinePiece::constant(d, 0)};
    }
    case PwlOp::Impl: return {sub(f, g), plus_const(sub(g, f), 1), AffinePiece::constant(d, 1)};
    case PwlOp::OPlus: return {plus_const(add(f, g), -1), AffinePiece::constant(d, 1), add(f, g)};
    case PwlOp::Neg: break;
  }
  throw InternalError("choose: unary op");
}

PwlFunction combine_1d(PwlOp op, const PwlFunction& f, const PwlFunction& g) {
  Refinement r = refine(f.complex, g.complex);
  struct Seg {
    Rational lo, hi;
    AffinePiece piece;
  };
  std::vector<Seg> segs;
  for (std::size_t k = 0; k < r.complex.size(); ++k) {
    const Rational& lo = r.complex.vertices[r.complex.cells[k][0]][0];
    const Rational& hi = r.complex.vertices[r.complex.cells[k][1]][0];
    Choice c = choose(op, f.pieces[r.from_a[k]], g.pieces[r.from_b[k]]);
    Rational dl = c.delta.eval({lo}), dh = c.delta.eval({hi});
    if (dl.sign() * dh.sign() < 0) {
      Rational x = lo + (hi - lo) * dl / (dl - dh);
      segs.push_back({lo, x, dl.sign() > 0 ? c.pos : c.neg});
      segs.push_back({x, hi, dh.sign() > 0 ? c.pos : c.neg});
    } else {
      segs.push_back({lo, hi, (dl + dh).sign() >= 0 ? c.pos : c.neg});
    }
  }
  PwlFunction out;
  out.complex.dim = 1;
  out.complex.vertices.push_back({segs.front().lo});
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!out.pieces.empty() && out.pieces.back() == segs[i].piece) {
      out.complex.vertices.back() = {segs[i].hi};
      continue;
    }
    out.complex.vertices.push_back({segs[i].hi});
    out.complex.cells.push_back({out.complex.vertices.size() - 2, out.complex.vertices.size() - 1});
    out.pieces.push_back(segs[i].piece);
  }
  return out;
}

PwlFunction combine_2d(PwlOp op, const PwlFunction& f, const PwlFunction& g) {
  Refinement r = refine(f.complex, g.complex);
  std::vector<Choice> choice;
  choice.reserve(r.complex.size());
  for (std::size_t k = 0; k < r.complex.size(); ++k)
    choice.push_back(choose(op, f.pieces[r.from_a[k]], g.pieces[r.from_b[k]]));
  detail::Mesh m = detail::Mesh::from_complex(r.complex);
  std::vector<std::optional<Rational>> delta(m.pts.size());
  auto point = [&](std::size_t v) { return Point{m.pts[v][0], m.pts[v][1]}; };
  for (const auto& t : m.tris)
    for (auto v : t.v)
      if (!delta[v]) delta[v] = choice[t.ta].delta.eval(point(v));
  std::map<detail::EdgeKey, std::size_t> splits;
  for (const auto& t : m.tris)
    for (int k = 0; k < 3; ++k) {
      std::size_t a = t.v[k], b = t.v[(k + 1) % 3];
      const Rational &da = *delta[a], &db = *delta[b];
      if (da.sign() * db.sign() >= 0) continue;
      auto key = detail::edge_key(a, b);
      if (splits.count(key)) continue;
      Rational lam = da / (da - db);
      detail::P2 x{m.pts[a][0] + lam * (m.pts[b][0] - m.pts[a][0]), m.pts[a][1] + lam * (m.pts[b][1] - m.pts[a][1])};
      splits.emplace(key, m.add_vertex(x));
    }
  m.split(splits);
  PwlFunction out;
  out.complex = m.to_complex();
  for (const auto& t : m.tris) {
    const Choice& c = choice[t.ta];
    Rational s(0);
    for (auto v : t.v) s += c.delta.eval(point(v));
    out.pieces.push_back(s.sign() >= 0 ? c.pos : c.neg);
  }
  return simplify_2d(out);
}

}  // namespace

PwlFunction pwl_combine(PwlOp op, const PwlFunction& f, const PwlFunction* g) {
  if (op == PwlOp::Neg) {
    if (g) throw DomainError("neg takes one argument");
    PwlFunction out = f;
    for (auto& p : out.pieces) p = one_minus(p);
    return out;
  }
  if (!g) throw DomainError("binary connective needs two arguments");
  if (f.dim() != g->dim()) throw DomainError("dimension mismatch");
  return f.dim() == 1 ? combine_1d(op, f, *g) : combine_2d(op, f, *g);
}

PwlFunction pwl_combine(PwlOp op, const PwlFunction& f, const PwlFunction& g) { return pwl_combine(op, f, &g); }

namespace {

struct PwlAlgebra {
  int dim;
  PwlFunction zero() const { return PwlFunction::constant(dim, 0); }
  PwlFunction one() const { return PwlFunction::constant(dim, 1); }
  PwlFunction star(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Star, a, b); }
  PwlFunction impl(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Impl, a, b); }
  PwlFunction neg(const PwlFunction& a) const { return pwl_combine(PwlOp::Neg, a); }
  PwlFunction conj(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Min, a, b); }
  PwlFunction disj(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Max, a, b); }
  PwlFunction oplus(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::OPlus, a, b); }
};

}  // namespace

PwlFunction pwl_from_formula(const Formula& f, int dim) {
  if (dim != 1 && dim != 2) throw DomainError("exact PWL calculus supports dimension 1 or 2");
  if (f.arity() > static_cast<std::size_t>(dim))
    throw DomainError("formula mentions x" + std::to_string(f.arity() - 1) + ", beyond dimension " + std::to_string(dim));
  std::vector<PwlFunction> vars;
  for (int i = 0; i < dim; ++i) vars.push_back(PwlFunction::coordinate(dim, static_cast<std::size_t>(i)));
  return run_program(Program::compile(f), PwlAlgebra{dim}, std::span<const PwlFunction>(vars));
}

Rational pwl_eval(const PwlFunction& f, const Point& p) {
  if (p.size() != static_cast<std::size_t>(f.dim())) throw DomainError("point dimension mismatch");
  for (const auto& x : p)
    if (x.sign() < 0 || x > Rational(1)) throw DomainError("point outside the cube");
  auto c = locate_cell(f.complex, p);
  if (!c) throw DomainError("point not covered by the complex");
  return f.pieces[*c].eval(p);
}

MinValue pwl_min_value(const PwlFunction& f) {
  std::optional<MinValue> best;
  for (std::size_t k = 0; k < f.complex.size(); ++k)
    for (auto v : f.complex.cells[k]) {
      const Point& p = f.complex.vertices[v];
      Rational val = f.pieces[k].eval(p);
      if (!best || val < best->value || (val == best->value && p < best->witness)) best = MinValue{val, p};
    }
  if (!best) throw DomainError("empty complex");
  return *best;
}

bool pwl_equal(const PwlFunction& f, const PwlFunction& g) {
  if (f.dim() != g.dim()) throw DomainError("dimension mismatch");
  Refinement r = refine(f.complex, g.complex);
  for (std::size_t k = 0; k < r.complex.size(); ++k)
    for (auto v : r.complex.cells[k]) {
      const Point& p = r.complex.vertices[v];
      if (f.pieces[r.from_a[k]].eval(p) != g.pieces[r.from_b[k]].eval(p)) return false;
    }
  return true;
}

Box Box::unit(int dim) {
  Box b;
  b.sides.assign(static_cast<std::size_t>(dim), {Rational(0), Rational(1)});
  return b;
}

Box Box::parse(std::string_view text) {
  Box b;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    auto colon = piece.find(':');
    if (colon == std::string_view::npos) throw DomainError("box side must be lo:hi");
    Rational lo = Rational::parse(piece.substr(0, colon)), hi = Rational::parse(piece.substr(colon + 1));
    if (lo < 0 || hi > 1 || hi < lo) throw DomainError("box side must satisfy 0 <= lo <= hi <= 1");
    b.sides.push_back({lo, hi});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return b;
}

Rational Box::volume() const {
  Rational v(1);
  for (const auto& [lo, hi] : sides) v *= rmax(hi - lo, Rational(0));
  return v;
}

bool Box::contains(const Point& p) const {
  for (std::size_t i = 0; i < sides.size(); ++i)
    if (p[i] < sides[i].first || p[i] > sides[i].second) return false;
  return true;
}

bool Box::contains_open(const Point& p) const {
  for (std::size_t i = 0; i < sides.size(); ++i)
    if (p[i] <= sides[i].first || p[i] >= sides[i].second) return false;
  return true;
}

namespace {

using Poly = std::vector<detail::P2>;

// Keep the part where sign * (x_axis - bound) >= 0.
Poly clip(const Poly& in, int axis, const Rational& bound, int sign) {
  Poly out;
  auto inside = [&](const detail::P2& p) { return ((p[axis] - bound) * Rational(sign)).sign() >= 0; };
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& cur = in[i];
    const auto& nxt = in[(i + 1) % in.size()];
    bool ci = inside(cur), ni = inside(nxt);
    if (ci) out.push_back(cur);
    if (ci != ni) {
      Rational t = (bound - cur[axis]) / (nxt[axis] - cur[axis]);
      out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
    }
  }
  return out;
}

}  // namespace

Integral pwl_integral(const PwlFunction& f, const Box& box) {
  if (box.sides.size() != static_cast<std::size_t>(f.dim())) throw DomainError("box dimension mismatch");
  for (const auto& [lo, hi] : box.sides)
    if (lo.sign() < 0 || hi > Rational(1) || hi < lo) throw DomainError("box must lie within the cube");
  if (box.volume().is_zero()) return {Rational(0), true};
  Rational total(0);
  if (f.dim() == 1) {
    const auto& [lo, hi] = box.sides[0];
    for (std::size_t k = 0; k < f.complex.size(); ++k) {
      Rational a = f.complex.vertices[f.complex.cells[k][0]][0], b = f.complex.vertices[f.complex.cells[k][1]][0];
      if (b < a) std::swap(a, b);
      a = rmax(a, lo);
      b = rmin(b, hi);
      if (b <= a) continue;
      total += (b - a) * (f.pieces[k].eval({a}) + f.pieces[k].eval({b})) / Rational(2);
    }
    return {total, false};
  }
  for (std::size_t k = 0; k < f.complex.size(); ++k) {
    Poly poly;
    for (auto v : f.complex.cells[k]) poly.push_back({f.complex.vertices[v][0], f.complex.vertices[v][1]});
    for (int axis = 0; axis < 2 && poly.size() >= 3; ++axis) {
      poly = clip(poly, axis, box.sides[axis].first, 1);
      if (poly.size() >= 3) poly = clip(poly, axis, box.sides[axis].second, -1);
    }
    if (poly.size() < 3) continue;
    const AffinePiece& pc = f.pieces[k];
    auto val = [&](const detail::P2& p) { return pc.eval({p[0], p[1]}); };
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      Rational area = abs(detail::orient(poly[0], poly[i], poly[i + 1])) / Rational(2);
      if (area.is_zero()) continue;
      total += area * (val(poly[0]) + val(poly[i]) + val(poly[i + 1])) / Rational(3);
    }
  }
  return {total, false};
}

PwlFunction simplify_1d(const PwlFunction& f) {
  if (f.dim() != 1) throw DomainError("simplify_1d needs dimension 1");
  std::vector<std::size_t> order(f.complex.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  auto left = [&](std::size_t k) {
    return rmin(f.complex.vertices[f.complex.cells[k][0]][0], f.complex.vertices[f.complex.cells[k][1]][0]);
  };
  auto right = [&](std::size_t k) {
    return rmax(f.complex.vertices[f.complex.cells[k][0]][0], f.complex.vertices[f.complex.cells[k][1]][0]);
  };
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return left(x) < left(y); });
  PwlFunction out;
  out.complex.dim = 1;
  out.complex.vertices.push_back({left(order.front())});
  for (auto k : order) {
    if (!out.pieces.empty() && out.pieces.back() == f.pieces[k]) {
      out.complex.vertices.back() = {right(k)};
      continue;
    }
    out.complex.vertices.push_back({right(k)});
    out.complex.cells.push_back({out.complex.vertices.size() - 2, out.complex.vertices.size() - 1});
    out.pieces.push_back(f.pieces[k]);
  }
  return out;
}

namespace {

Rational orient2(const Point& a, const Point& b, const Point& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// Ear clipping of a counterclockwise simple polygon; empty on failure.
std::vector<std::array<std::size_t, 3>> ear_clip(std::vector<std::size_t> poly, const std::vector<Point>& V) {
  std::vector<std::array<std::size_t, 3>> out;
  while (poly.size() > 3) {
    bool clipped = false;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      std::size_t p = poly[(i + n - 1) % n], q = poly[i], r = poly[(i + 1) % n];
      if (orient2(V[p], V[q], V[r]).sign() <= 0) continue;
      bool empty = true;
      for (std::size_t w : poly) {
        if (w == p || w == q || w == r) continue;
        if (orient2(V[p], V[q], V[w]).sign() >= 0 && orient2(V[q], V[r], V[w]).sign() >= 0 &&
            orient2(V[r], V[p], V[w]).sign() >= 0) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      out.push_back({p, q, r});
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) return {};
  }
  if (orient2(V[poly[0]], V[poly[1]], V[poly[2]]).sign() <= 0) return {};
  out.push_back({poly[0], poly[1], poly[2]});
  return out;
}

}  // namespace

PwlFunction simplify_2d(const PwlFunction& f) {
  if (f.dim() != 2) throw DomainError("simplify_2d needs dimension 2");
  const auto& V = f.complex.vertices;
  std::vector<AffinePiece> uniq;
  std::vector<std::array<std::size_t, 3>> tri;
  std::vector<std::size_t> piece;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> inc(V.size());
  auto add_tri = [&](std::array<std::size_t, 3> t, std::size_t pc) {
    if (orient2(V[t[0]], V[t[1]], V[t[2]]).sign() < 0) std::swap(t[1], t[2]);
    for (auto v : t) inc[v].push_back(tri.size());
    tri.push_back(t);
    piece.push_back(pc);
    alive.push_back(true);
  };
  for (std::size_t k = 0; k < f.complex.size(); ++k) {
    auto it = std::find(uniq.begin(), uniq.end(), f.pieces[k]);
    if (it == uniq.end()) it = uniq.insert(uniq.end(), f.pieces[k]);
    const auto& c = f.complex.cells[k];
    add_tri({c[0], c[1], c[2]}, static_cast<std::size_t>(it - uniq.begin()));
  }
  auto on_side = [&](std::size_t v, int axis) {
    return V[v][axis].is_zero() || V[v][axis] == Rational(1);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < V.size(); ++v) {
      std::vector<std::size_t> star;
      for (auto t : inc[v])
        if (alive[t]) star.push_back(t);
      inc[v] = star;
      if (star.empty()) continue;
      bool bx = on_side(v, 0), by = on_side(v, 1);
      if (bx && by) continue;
      bool boundary = bx || by;
      // fan: each triangle as (v, a, b) counterclockwise
      std::map<std::size_t, std::pair<std::size_t, std::size_t>> next;  // a -> (b, triangle)
      std::set<std::size_t> heads;
      bool ok = true;
      for (auto t : star) {
        const auto& T = tri[t];
        int i = T[0] == v ? 0 : (T[1] == v ? 1 : 2);
        std::size_t a = T[(i + 1) % 3], b = T[(i + 2) % 3];
        if (!next.emplace(a, std::pair{b, t}).second) ok = false;
        heads.insert(b);
      }
      if (!ok) continue;
      std::size_t start = next.begin()->first;
      if (boundary) {
        std::size_t found = 0, count = 0;
        for (const auto& [a, bt] : next)
          if (!heads.count(a)) {
            found = a;
            ++count;
          }
        if (count != 1) continue;
        start = found;
      }
      std::vector<std::size_t> link{start}, steps;
      std::size_t cur = start;
      while (true) {
        auto it = next.find(cur);
        if (it == next.end()) break;
        steps.push_back(it->second.second);
        cur = it->second.first;
        if (cur == start) break;
        link.push_back(cur);
        if (steps.size() > star.size()) break;
      }
      if (steps.size() != star.size()) continue;
      if (!boundary && cur != start) continue;
      // sectors of constant piece
      std::vector<std::vector<std::size_t>> polys;
      std::vector<std::size_t> poly_piece;
      std::size_t ns = steps.size();
      auto straight = [&](std::size_t a, std::size_t b) {
        if (!orient2(V[a], V[v], V[b]).is_zero()) return false;
        Rational dot = (V[a][0] - V[v][0]) * (V[b][0] - V[v][0]) + (V[a][1] - V[v][1]) * (V[b][1] - V[v][1]);
        return dot.sign() < 0;
      };
      if (boundary) {
        bool one = std::all_of(steps.begin(), steps.end(), [&](auto t) { return piece[t] == piece[steps[0]]; });
        if (!one || !straight(link.front(), link.back())) continue;
        polys.push_back(link);
        poly_piece.push_back(piece[steps[0]]);
      } else {
        std::vector<std::size_t> cuts;  // step indices where the piece changes
        for (std::size_t i = 0; i < ns; ++i)
          if (piece[steps[i]] != piece[steps[(i + ns - 1) % ns]]) cuts.push_back(i);
        if (cuts.empty()) {
          polys.push_back(link);
          poly_piece.push_back(piece[steps[0]]);
        } else if (cuts.size() == 2) {
          // link[i] is the edge between steps i-1 and i
          std::size_t c0 = cuts[0], c1 = cuts[1];
          if (!straight(link[c0], link[c1])) continue;
          std::vector<std::size_t> p0, p1;
          for (std::size_t i = c0; i <= c1; ++i) p0.push_back(link[i % ns]);
          for (std::size_t i = c1; i <= c0 + ns; ++i) p1.push_back(link[i % ns]);
          polys.push_back(p0);
          poly_piece.push_back(piece[steps[c0]]);
          polys.push_back(p1);
          poly_piece.push_back(piece[steps[c1]]);
        } else {
          continue;
        }
      }
      std::vector<std::vector<std::array<std::size_t, 3>>> fills;
      for (const auto& p : polys) {
        if (p.size() < 3) {
          ok = false;
          break;
        }
        auto tr = ear_clip(p, V);
        if (tr.empty()) {
          ok = false;
          break;
        }
        fills.push_back(std::move(tr));
      }
      if (!ok) continue;
      for (auto t : steps) alive[t] = false;
      for (std::size_t i = 0; i < fills.size(); ++i)
        for (const auto& t : fills[i]) add_tri(t, poly_piece[i]);
      inc[v].clear();
      changed = true;
    }
  }
  PwlFunction out;
  out.complex.dim = 2;
  std::vector<std::size_t> remap(V.size(), SIZE_MAX);
  for (std::size_t t = 0; t < tri.size(); ++t) {
    if (!alive[t]) continue;
    std::vector<std::size_t> cell;
    for (auto v : tri[t]) {
      if (remap[v] == SIZE_MAX) {
        remap[v] = out.complex.vertices.size();
        out.complex.vertices.push_back(V[v]);
      }
      cell.push_back(remap[v]);
    }
    out.complex.cells.push_back(cell);
    out.pieces.push_back(uniq[piece[t]]);
  }
  return out;
}

bool RationalAffineMap::integral() const {
  for (const auto& row : A)
    for (const auto& x : row)
      if (!x.is_integer()) return false;
  for (const auto& x : B)
    if (!x.is_integer()) return false;
  return true;
}

Point RationalAffineMap::apply(const Point& p) const {
  Point out = B;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) out[i] += A[i][j] * p[j];
  return out;
}

RationalAffineMap affine_from_simplex_pair(std::span<const Point> source, std::span<const Point> target) {
  std::size_t n = source.size();
  if (n < 2 || target.size() != n) throw DomainError("need d+1 source and d+1 target points");
  std::size_t d = n - 1;
  for (std::size_t i = 0; i < n; ++i)
    if (source[i].size() != d || target[i].size() != d) throw DomainError("points must have d coordinates");
  using Mat = std::vector<std::vector<Rational>>;
  Mat S(n, std::vector<Rational>(n)), T(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      S[i][j] = source[j][i];
      T[i][j] = target[j][i];
    }
    S[d][j] = Rational(1);
    T[d][j] = Rational(1);
  }
  // Gauss-Jordan inverse of S
  Mat inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && S[piv][col].is_zero()) ++piv;
    if (piv == n) throw DomainError("degenerate source simplex");
    std::swap(S[piv], S[col]);
    std::swap(inv[piv], inv[col]);
    Rational scale = S[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      S[col][j] /= scale;
      inv[col][j] /= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || S[r][col].is_zero()) continue;
      Rational f = S[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        S[r][j] -= f * S[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  RationalAffineMap m;
  m.A.assign(d, std::vector<Rational>(d, Rational(0)));
  m.B.assign(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s(0);
      for (std::size_t k = 0; k < n; ++k) s += T[i][k] * inv[k][j];
      if (j < d) m.A[i][j] = s;
      else m.B[i] = s;
    }
  return m;
}

}  // namespace mvdyn
