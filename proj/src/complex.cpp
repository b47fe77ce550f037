#include "mvdyn/complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mesh.hpp"
#include "mvdyn/errors.hpp"

namespace mvdyn {

namespace detail {

Rational orient(const P2& a, const P2& b, const P2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

Mesh Mesh::from_complex(const CellComplex& c) {
  if (c.dim != 2) throw DomainError("mesh needs a 2-dimensional complex");
  Mesh m;
  std::vector<std::size_t> remap(c.vertices.size());
  for (std::size_t i = 0; i < c.vertices.size(); ++i) remap[i] = m.add_vertex({c.vertices[i][0], c.vertices[i][1]});
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const auto& cell = c.cells[k];
    Tri t{{remap[cell[0]], remap[cell[1]], remap[cell[2]]}, k, 0};
    int s = m.orient_sign(t.v[0], t.v[1], t.v[2]);
    if (s == 0) throw DomainError("degenerate triangle " + std::to_string(k));
    if (s < 0) std::swap(t.v[1], t.v[2]);
    m.tris.push_back(t);
  }
  return m;
}

CellComplex Mesh::to_complex() const {
  CellComplex c;
  c.dim = 2;
  for (const auto& p : pts) c.vertices.push_back({p[0], p[1]});
  for (const auto& t : tris) c.cells.push_back({t.v[0], t.v[1], t.v[2]});
  return c;
}

std::size_t Mesh::add_vertex(const P2& p) {
  auto [it, fresh] = lookup_.emplace(p, pts.size());
  if (fresh) {
    pts.push_back(p);
    approx.push_back({p[0].to_double(), p[1].to_double()});
  }
  return it->second;
}

std::optional<std::size_t> Mesh::find_vertex(const P2& p) const {
  if (auto it = lookup_.find(p); it != lookup_.end()) return it->second;
  return std::nullopt;
}

int Mesh::orient_sign(std::size_t a, std::size_t b, std::size_t c) const {
  const auto &A = approx[a], &B = approx[b], &C = approx[c];
  double d = (B[0] - A[0]) * (C[1] - A[1]) - (B[1] - A[1]) * (C[0] - A[0]);
  if (d > 1e-10) return 1;
  if (d < -1e-10) return -1;
  return orient(pts[a], pts[b], pts[c]).sign();
}

void Mesh::split(const std::map<EdgeKey, std::size_t>& splits) {
  if (splits.empty()) return;
  std::vector<Tri> out;
  out.reserve(tris.size() + 2 * splits.size());
  for (const auto& t : tris) {
    std::array<long, 3> mid{-1, -1, -1};  // mid[k] splits edge (v[k], v[k+1])
    int count = 0;
    for (int k = 0; k < 3; ++k) {
      auto it = splits.find(edge_key(t.v[k], t.v[(k + 1) % 3]));
      if (it != splits.end()) {
        mid[k] = static_cast<long>(it->second);
        ++count;
      }
    }
    auto emit = [&](std::size_t a, std::size_t b, std::size_t c) { out.push_back(Tri{{a, b, c}, t.ta, t.tb}); };
    if (count == 0) {
      out.push_back(t);
    } else if (count == 1) {
      int k = mid[0] >= 0 ? 0 : (mid[1] >= 0 ? 1 : 2);
      int r = (k + 2) % 3;
      std::size_t a = t.v[r], b = t.v[(r + 1) % 3], c = t.v[(r + 2) % 3];
      auto p = static_cast<std::size_t>(mid[k]);
      emit(a, b, p);
      emit(a, p, c);
    } else if (count == 2) {
      int k = mid[0] < 0 ? 0 : (mid[1] < 0 ? 1 : 2);
      int r = (k + 2) % 3;
      std::size_t a = t.v[r], b = t.v[(r + 1) % 3], c = t.v[(r + 2) % 3];
      auto p = static_cast<std::size_t>(mid[r]);
      auto q = static_cast<std::size_t>(mid[(r + 2) % 3]);
      emit(a, p, q);
      std::size_t lowest = std::min({p, b, c, q});
      if (lowest == p || lowest == c) {
        emit(p, b, c);
        emit(p, c, q);
      } else {
        emit(p, b, q);
        emit(b, c, q);
      }
    } else {
      std::size_t a = t.v[0], b = t.v[1], c = t.v[2];
      auto p = static_cast<std::size_t>(mid[0]);
      auto q = static_cast<std::size_t>(mid[1]);
      auto r = static_cast<std::size_t>(mid[2]);
      emit(a, p, r);
      emit(p, b, q);
      emit(r, q, c);
      emit(p, q, r);
    }
  }
  tris = std::move(out);
}

std::size_t Mesh::insert_point(const P2& p) {
  if (auto v = find_vertex(p)) return *v;
  double px = p[0].to_double(), py = p[1].to_double();
  const double eps = 1e-9;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const auto& t = tris[i];
    double lx = 2, ly = 2, hx = -1, hy = -1;
    for (auto v : t.v) {
      lx = std::min(lx, approx[v][0]);
      hx = std::max(hx, approx[v][0]);
      ly = std::min(ly, approx[v][1]);
      hy = std::max(hy, approx[v][1]);
    }
    if (px < lx - eps || px > hx + eps || py < ly - eps || py > hy + eps) continue;
    std::array<int, 3> s;
    bool outside = false;
    for (int k = 0; k < 3; ++k) {
      s[k] = orient(pts[t.v[k]], pts[t.v[(k + 1) % 3]], p).sign();
      if (s[k] < 0) outside = true;
    }
    if (outside) continue;
    std::size_t q = add_vertex(p);
    int zeros = (s[0] == 0) + (s[1] == 0) + (s[2] == 0);
    if (zeros == 0) {
      Tri base = t;
      tris[i] = Tri{{base.v[0], base.v[1], q}, base.ta, base.tb};
      tris.push_back(Tri{{base.v[1], base.v[2], q}, base.ta, base.tb});
      tris.push_back(Tri{{base.v[2], base.v[0], q}, base.ta, base.tb});
    } else {
      int k = s[0] == 0 ? 0 : (s[1] == 0 ? 1 : 2);
      split({{edge_key(t.v[k], t.v[(k + 1) % 3]), q}});
    }
    return q;
  }
  throw DomainError("point outside the triangulation");
}

void Mesh::insert_segment(std::size_t u, std::size_t v) {
  const P2 &U = pts[u], &V = pts[v];
  const auto &Ua = approx[u], &Va = approx[v];
  const double eps = 1e-9;
  double lx = std::min(Ua[0], Va[0]) - eps, hx = std::max(Ua[0], Va[0]) + eps;
  double ly = std::min(Ua[1], Va[1]) - eps, hy = std::max(Ua[1], Va[1]) + eps;
  P2 dir{V[0] - U[0], V[1] - U[1]};
  Rational len2 = dir[0] * dir[0] + dir[1] * dir[1];
  std::map<EdgeKey, std::size_t> splits;
  std::vector<std::pair<EdgeKey, P2>> pending;
  for (const auto& t : tris) {
    bool miss = true;
    double tlx = 2, thx = -1, tly = 2, thy = -1;
    for (auto w : t.v) {
      tlx = std::min(tlx, approx[w][0]);
      thx = std::max(thx, approx[w][0]);
      tly = std::min(tly, approx[w][1]);
      thy = std::max(thy, approx[w][1]);
    }
    if (!(thx < lx || tlx > hx || thy < ly || tly > hy)) miss = false;
    if (miss) continue;
    std::array<int, 3> s;
    for (int k = 0; k < 3; ++k) s[k] = orient_sign(u, v, t.v[k]);
    bool pos = s[0] > 0 || s[1] > 0 || s[2] > 0;
    bool negv = s[0] < 0 || s[1] < 0 || s[2] < 0;
    if (!(pos && negv)) continue;
    // chord endpoints
    std::vector<P2> ends;
    std::vector<std::pair<EdgeKey, P2>> crossings;
    for (int k = 0; k < 3; ++k) {
      std::size_t a = t.v[k], b = t.v[(k + 1) % 3];
      if (s[k] == 0) ends.push_back(pts[a]);
      if (s[k] * s[(k + 1) % 3] < 0) {
        Rational oa = orient(U, V, pts[a]), ob = orient(U, V, pts[b]);
        Rational lam = oa / (oa - ob);
        P2 x{pts[a][0] + lam * (pts[b][0] - pts[a][0]), pts[a][1] + lam * (pts[b][1] - pts[a][1])};
        ends.push_back(x);
        crossings.push_back({edge_key(a, b), x});
      }
    }
    if (ends.size() != 2) throw InternalError("segment insertion: unexpected chord");
    P2 m{(ends[0][0] + ends[1][0]) / Rational(2), (ends[0][1] + ends[1][1]) / Rational(2)};
    Rational proj = (m[0] - U[0]) * dir[0] + (m[1] - U[1]) * dir[1];
    if (proj.sign() <= 0 || proj >= len2) continue;
    for (auto& c : crossings) pending.push_back(std::move(c));
  }
  for (auto& [key, x] : pending)
    if (!splits.count(key)) splits.emplace(key, add_vertex(x));
  split(splits);
}

Locator::Locator(const CellComplex& c, std::size_t grid) : c_(c) {
  g_ = grid ? grid : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(c.cells.size()) / 2.0)));
  g_ = std::min<std::size_t>(g_, 256);
  buckets_.assign(g_ * g_, {});
  const double eps = 1e-9;
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    double lx = 2, hx = -1, ly = 2, hy = -1;
    for (auto v : c.cells[k]) {
      double x = c.vertices[v][0].to_double(), y = c.vertices[v][1].to_double();
      lx = std::min(lx, x);
      hx = std::max(hx, x);
      ly = std::min(ly, y);
      hy = std::max(hy, y);
    }
    auto cl = [&](double z) {
      long i = static_cast<long>(std::floor(z * double(g_)));
      return static_cast<std::size_t>(std::clamp<long>(i, 0, long(g_) - 1));
    };
    for (std::size_t i = cl(lx - eps); i <= cl(hx + eps); ++i)
      for (std::size_t j = cl(ly - eps); j <= cl(hy + eps); ++j) buckets_[i * g_ + j].push_back(k);
  }
}

std::optional<std::size_t> Locator::locate(const P2& p) const {
  auto cl = [&](double z) {
    long i = static_cast<long>(std::floor(z * double(g_)));
    return static_cast<std::size_t>(std::clamp<long>(i, 0, long(g_) - 1));
  };
  const auto& b = buckets_[cl(p[0].to_double()) * g_ + cl(p[1].to_double())];
  for (auto k : b)
    if (c_.contains(k, {p[0], p[1]})) return k;
  return std::nullopt;
}

}  // namespace detail

using detail::P2;

CellComplex CellComplex::unit(int dim) {
  CellComplex c;
  c.dim = dim;
  if (dim == 1) {
    c.vertices = {{Rational(0)}, {Rational(1)}};
    c.cells = {{0, 1}};
  } else if (dim == 2) {
    c.vertices = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)},
                  {Rational(0), Rational(1)}};
    c.cells = {{0, 1, 2}, {0, 2, 3}};
  } else {
    throw DomainError("dimension must be 1 or 2");
  }
  return c;
}

Point CellComplex::centroid(std::size_t cell) const {
  Point p(static_cast<std::size_t>(dim), Rational(0));
  for (auto v : cells[cell])
    for (int i = 0; i < dim; ++i) p[i] += vertices[v][i];
  for (auto& x : p) x /= Rational(static_cast<long>(cells[cell].size()));
  return p;
}

Rational CellComplex::measure(std::size_t cell) const {
  const auto& c = cells[cell];
  if (dim == 1) return abs(vertices[c[1]][0] - vertices[c[0]][0]);
  P2 a{vertices[c[0]][0], vertices[c[0]][1]}, b{vertices[c[1]][0], vertices[c[1]][1]},
      d{vertices[c[2]][0], vertices[c[2]][1]};
  return abs(detail::orient(a, b, d)) / Rational(2);
}

bool CellComplex::contains(std::size_t cell, const Point& p) const {
  const auto& c = cells[cell];
  if (dim == 1) {
    const Rational& a = vertices[c[0]][0];
    const Rational& b = vertices[c[1]][0];
    return rmin(a, b) <= p[0] && p[0] <= rmax(a, b);
  }
  P2 a{vertices[c[0]][0], vertices[c[0]][1]}, b{vertices[c[1]][0], vertices[c[1]][1]},
      d{vertices[c[2]][0], vertices[c[2]][1]}, q{p[0], p[1]};
  int s0 = detail::orient(a, b, q).sign(), s1 = detail::orient(b, d, q).sign(), s2 = detail::orient(d, a, q).sign();
  return (s0 >= 0 && s1 >= 0 && s2 >= 0) || (s0 <= 0 && s1 <= 0 && s2 <= 0);
}

namespace {

std::string problem_1d(const CellComplex& c) {
  std::vector<std::pair<Rational, Rational>> iv;
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const auto& cell = c.cells[k];
    if (cell.size() != 2) return "cell " + std::to_string(k) + " is not an interval";
    const Rational& a = c.vertices[cell[0]][0];
    const Rational& b = c.vertices[cell[1]][0];
    if (a == b) return "cell " + std::to_string(k) + " is degenerate";
    iv.push_back({rmin(a, b), rmax(a, b)});
  }
  std::sort(iv.begin(), iv.end());
  if (iv.empty() || iv.front().first != Rational(0) || iv.back().second != Rational(1))
    return "cells do not cover [0,1]";
  for (std::size_t k = 1; k < iv.size(); ++k)
    if (iv[k].first != iv[k - 1].second) return "cells overlap or leave a gap at " + iv[k].first.str();
  return {};
}

// Interiors of two counterclockwise triangles are disjoint iff some edge separates them.
bool interiors_disjoint(const std::array<P2, 3>& t, const std::array<P2, 3>& u) {
  auto separated = [](const std::array<P2, 3>& a, const std::array<P2, 3>& b) {
    for (int k = 0; k < 3; ++k) {
      bool all_out = true;
      for (const auto& p : b)
        if (detail::orient(a[k], a[(k + 1) % 3], p).sign() > 0) {
          all_out = false;
          break;
        }
      if (all_out) return true;
    }
    return false;
  };
  return separated(t, u) || separated(u, t);
}

std::string problem_2d(const CellComplex& c) {
  const Rational zero(0), one(1);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const auto& v = c.vertices[i];
    if (v.size() != 2) return "vertex " + std::to_string(i) + " is not 2-dimensional";
    if (v[0] < zero || v[0] > one || v[1] < zero || v[1] > one) return "vertex " + std::to_string(i) + " outside the square";
  }
  std::vector<std::array<P2, 3>> tri;
  std::vector<std::array<double, 4>> box;
  Rational area(0);
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const auto& cell = c.cells[k];
    if (cell.size() != 3) return "cell " + std::to_string(k) + " is not a triangle";
    for (auto v : cell)
      if (v >= c.vertices.size()) return "cell " + std::to_string(k) + " references a missing vertex";
    std::array<P2, 3> t;
    for (int j = 0; j < 3; ++j) t[j] = {c.vertices[cell[j]][0], c.vertices[cell[j]][1]};
    Rational o = detail::orient(t[0], t[1], t[2]);
    if (o.is_zero()) return "cell " + std::to_string(k) + " is degenerate";
    if (o.sign() < 0) std::swap(t[1], t[2]);
    area += abs(o) / Rational(2);
    std::array<double, 4> b{2, -1, 2, -1};
    for (const auto& p : t) {
      b[0] = std::min(b[0], p[0].to_double());
      b[1] = std::max(b[1], p[0].to_double());
      b[2] = std::min(b[2], p[1].to_double());
      b[3] = std::max(b[3], p[1].to_double());
    }
    tri.push_back(t);
    box.push_back(b);
  }
  if (area != one) return "cells cover area " + area.str() + " instead of 1";
  const double eps = 1e-9;
  for (std::size_t i = 0; i < tri.size(); ++i)
    for (std::size_t j = i + 1; j < tri.size(); ++j) {
      if (box[i][1] < box[j][0] + eps || box[j][1] < box[i][0] + eps || box[i][3] < box[j][2] + eps ||
          box[j][3] < box[i][2] + eps)
        continue;
      if (!interiors_disjoint(tri[i], tri[j]))
        return "cells " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
    }
  // conformity: no vertex in the relative interior of an edge
  for (std::size_t k = 0; k < tri.size(); ++k) {
    for (int e = 0; e < 3; ++e) {
      const P2& a = tri[k][e];
      const P2& b = tri[k][(e + 1) % 3];
      double lx = std::min(a[0].to_double(), b[0].to_double()) - eps;
      double hx = std::max(a[0].to_double(), b[0].to_double()) + eps;
      double ly = std::min(a[1].to_double(), b[1].to_double()) - eps;
      double hy = std::max(a[1].to_double(), b[1].to_double()) + eps;
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        double x = c.vertices[i][0].to_double(), y = c.vertices[i][1].to_double();
        if (x < lx || x > hx || y < ly || y > hy) continue;
        P2 p{c.vertices[i][0], c.vertices[i][1]};
        if (p == a || p == b) continue;
        if (!detail::orient(a, b, p).is_zero()) continue;
        Rational dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
        Rational len = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
        if (dot.sign() > 0 && dot < len)
          return "vertex " + std::to_string(i) + " lies inside an edge of cell " + std::to_string(k);
      }
    }
  }
  return {};
}

}  // namespace

std::string complex_problem(const CellComplex& c) {
  if (c.dim == 1) {
    for (const auto& v : c.vertices)
      if (v.size() != 1 || v[0] < Rational(0) || v[0] > Rational(1)) return "vertex outside [0,1]";
    for (const auto& cell : c.cells)
      for (auto v : cell)
        if (v >= c.vertices.size()) return "cell references a missing vertex";
    return problem_1d(c);
  }
  if (c.dim == 2) return problem_2d(c);
  return "dimension must be 1 or 2";
}

void validate_complex(const CellComplex& c) {
  if (auto p = complex_problem(c); !p.empty()) throw DomainError("invalid complex: " + p);
}

std::optional<std::size_t> locate_cell(const CellComplex& c, const Point& p) {
  if (p.size() != static_cast<std::size_t>(c.dim)) throw DomainError("point dimension mismatch");
  for (std::size_t k = 0; k < c.cells.size(); ++k)
    if (c.contains(k, p)) return k;
  return std::nullopt;
}

CellComplex normalized(const CellComplex& c) {
  if (c.dim == 1) {
    std::vector<std::pair<Rational, std::size_t>> order;
    for (std::size_t k = 0; k < c.cells.size(); ++k)
      order.push_back({rmin(c.vertices[c.cells[k][0]][0], c.vertices[c.cells[k][1]][0]), k});
    std::sort(order.begin(), order.end());
    CellComplex out;
    out.dim = 1;
    out.vertices.push_back({Rational(0)});
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& cell = c.cells[order[i].second];
      out.vertices.push_back({rmax(c.vertices[cell[0]][0], c.vertices[cell[1]][0])});
      out.cells.push_back({i, i + 1});
    }
    return out;
  }
  return detail::Mesh::from_complex(c).to_complex();
}

namespace {

Refinement refine_1d(const CellComplex& a, const CellComplex& b) {
  std::set<Rational> bps;
  for (const auto& v : a.vertices) bps.insert(v[0]);
  for (const auto& v : b.vertices) bps.insert(v[0]);
  Refinement r;
  r.complex.dim = 1;
  for (const auto& x : bps) r.complex.vertices.push_back({x});
  for (std::size_t i = 0; i + 1 < r.complex.vertices.size(); ++i) {
    r.complex.cells.push_back({i, i + 1});
    Point mid{(r.complex.vertices[i][0] + r.complex.vertices[i + 1][0]) / Rational(2)};
    auto ca = locate_cell(a, mid), cb = locate_cell(b, mid);
    if (!ca || !cb) throw DomainError("refinement: input complexes do not cover [0,1]");
    r.from_a.push_back(*ca);
    r.from_b.push_back(*cb);
  }
  return r;
}

}  // namespace

Refinement refine(const CellComplex& a, const CellComplex& b) {
  if (a.dim != b.dim) throw DomainError("dimension mismatch");
  if (a.dim == 1) return refine_1d(a, b);
  if (a == b) {
    Refinement r;
    r.complex = a;
    for (std::size_t k = 0; k < a.cells.size(); ++k) {
      r.from_a.push_back(k);
      r.from_b.push_back(k);
    }
    return r;
  }
  detail::Mesh m = detail::Mesh::from_complex(a);
  std::vector<std::size_t> bmap;
  for (const auto& v : b.vertices) bmap.push_back(m.insert_point({v[0], v[1]}));
  std::set<detail::EdgeKey> edges;
  for (const auto& cell : b.cells)
    for (int k = 0; k < 3; ++k) edges.insert(detail::edge_key(bmap[cell[k]], bmap[cell[(k + 1) % 3]]));
  for (const auto& [u, v] : edges) m.insert_segment(u, v);
  Refinement r;
  r.complex = m.to_complex();
  detail::Locator loc(b);
  for (std::size_t k = 0; k < m.tris.size(); ++k) {
    Point c = r.complex.centroid(k);
    auto cb = loc.locate({c[0], c[1]});
    if (!cb) throw DomainError("refinement: second complex does not cover the square");
    r.from_a.push_back(m.tris[k].ta);
    r.from_b.push_back(*cb);
  }
  return r;
}

CellComplex common_refinement(const CellComplex& a, const CellComplex& b) { return refine(a, b).complex; }

}  // namespace mvdyn
