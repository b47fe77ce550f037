#include "mvdyn/dynamics.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "mvdyn/errors.hpp"
#include "mvdyn/semantics.hpp"

namespace mvdyn {

Point AffineMapZ::apply(const Point& p) const {
  Point out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rational v(B[i]);
    for (std::size_t j = 0; j < p.size(); ++j)
      if (A[i][j] != 0) v += Rational(A[i][j]) * p[j];
    out.push_back(v);
  }
  return out;
}

Point AffineMapZ::linear(const Point& v) const {
  Point out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < v.size(); ++j) s += Rational(A[i][j]) * v[j];
    out.push_back(s);
  }
  return out;
}

Integer AffineMapZ::det() const {
  if (A.size() == 1) return A[0][0];
  if (A.size() == 2) return A[0][0] * A[1][1] - A[0][1] * A[1][0];
  throw DomainError("determinant only for dimension 1 or 2");
}

Point PwlMap::eval(const Point& p) const {
  auto c = locate_cell(complex, p);
  if (!c) throw DomainError("point " + point_str(p) + " outside the cube");
  return pieces[*c].apply(p);
}

PwlFunction PwlMap::component(std::size_t i) const {
  PwlFunction f{complex, {}};
  for (const auto& m : pieces) f.pieces.push_back(AffinePiece{m.A.at(i), m.B.at(i)});
  return f;
}

std::string pwl_map_problem(const PwlMap& m) {
  if (auto p = complex_problem(m.complex); !p.empty()) return p;
  if (m.pieces.size() != m.complex.size()) return "piece count differs from cell count";
  std::map<Point, Point> at;
  for (std::size_t k = 0; k < m.complex.size(); ++k)
    for (auto v : m.complex.cells[k]) {
      const Point& x = m.complex.vertices[v];
      Point y = m.pieces[k].apply(x);
      for (const auto& c : y)
        if (c.sign() < 0 || c > Rational(1)) return "image of " + point_str(x) + " leaves the cube";
      auto [it, fresh] = at.emplace(x, y);
      if (!fresh && it->second != y) return "discontinuity at " + point_str(x);
    }
  return {};
}

PwlMap pwl_map_from_substitution(const Substitution& sigma) {
  int n = static_cast<int>(sigma.arity());
  if (n != 1 && n != 2) throw DomainError("exact PWL form needs arity 1 or 2");
  std::vector<PwlFunction> comp;
  for (const auto& s : sigma.images()) comp.push_back(pwl_from_formula(s, n));
  PwlMap m;
  if (n == 1) {
    m.complex = comp[0].complex;
    for (const auto& p : comp[0].pieces) m.pieces.push_back(AffineMapZ{{p.a}, {p.b}});
    return m;
  }
  Refinement r = refine(comp[0].complex, comp[1].complex);
  m.complex = r.complex;
  for (std::size_t k = 0; k < r.complex.size(); ++k) {
    const auto& a = comp[0].pieces[r.from_a[k]];
    const auto& b = comp[1].pieces[r.from_b[k]];
    m.pieces.push_back(AffineMapZ{{a.a, b.a}, {a.b, b.b}});
  }
  return m;
}

InducedMap::InducedMap(Substitution sigma) : sigma_(std::move(sigma)) {
  for (const auto& s : sigma_.images()) programs_.push_back(Program::compile(s));
  if (sigma_.arity() == 1 || sigma_.arity() == 2) pwl_ = pwl_map_from_substitution(sigma_);
}

Point InducedMap::operator()(const Point& p) const {
  if (p.size() != arity()) throw DomainError("point dimension differs from map arity");
  static const Semantics luk = Semantics::lukasiewicz();
  Point out;
  out.reserve(p.size());
  for (const auto& prog : programs_) out.push_back(eval(prog, luk, p));
  return out;
}

void InducedMap::eval_double(std::vector<double>& p, std::vector<double>& scratch) const {
  scratch.resize(p.size());
  for (std::size_t i = 0; i < programs_.size(); ++i)
    scratch[i] = mvdyn::eval_double(programs_[i], TNorm::Lukasiewicz, p);
  p.swap(scratch);
}

InducedMap induced_map(const Substitution& sigma) { return InducedMap(sigma); }
Point map_eval(const InducedMap& S, const Point& p) { return S(p); }

Integer denominator(const Point& p) {
  Integer d(1);
  for (const auto& c : p) d = lcm(d, c.denominator());
  return d;
}

Orbit orbit(const InducedMap& S, const Point& p, std::size_t max_steps) {
  Orbit o;
  o.start = p;
  o.max_steps = max_steps;
  std::unordered_map<Point, std::size_t, PointHash> seen;
  Point cur = p;
  for (std::size_t step = 0;; ++step) {
    o.points.push_back(cur);
    o.denominators.push_back(denominator(cur));
    if (auto it = seen.find(cur); it != seen.end()) {
      o.cycle = true;
      o.preperiod = it->second;
      o.period = step - it->second;
      return o;
    }
    seen.emplace(cur, step);
    if (step == max_steps) return o;
    cur = S(cur);
  }
}

namespace {

Integer symmetric_mod(const Integer& a, const Integer& d) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  if (2 * r > d) r -= d;
  return r;
}

// Replace (c0, c1) by the solution of c0 n0 + c1 n1 = 1 (mod d) minimizing |c0| + |c1|.
void smallest_pair(const std::vector<Integer>& n, const Integer& d, std::vector<Integer>& c) {
  long dd = d.get_si();
  Integer g1 = gcd(n[1], d);
  Integer step = d / g1;
  Integer unit1 = Integer(n[1] / g1), inv;
  if (step == 1) inv = 0;
  else if (mpz_invert(inv.get_mpz_t(), unit1.get_mpz_t(), step.get_mpz_t()) == 0) return;
  Integer best = abs(c[0]) + abs(c[1]);
  for (long a0 = -dd / 2; a0 <= dd / 2; ++a0) {
    if (std::abs(a0) >= best) continue;
    Integer rhs = 1 - Integer(a0) * n[0];
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), rhs.get_mpz_t(), d.get_mpz_t());
    if (r % g1 != 0) continue;
    Integer a1 = symmetric_mod(Integer(r / g1) * inv, step);
    Integer cost = std::abs(a0) + abs(a1);
    if (cost < best) {
      best = cost;
      c[0] = a0;
      c[1] = a1;
    }
  }
}

}  // namespace

Substitution reachability_substitution(const Point& p, const Point& q) {
  if (p.size() != q.size() || p.empty()) throw DomainError("points must have the same positive dimension");
  for (const auto& pt : {p, q})
    for (const auto& c : pt)
      if (c.sign() < 0 || c > Rational(1)) throw DomainError("points must lie in the cube");
  Integer d = denominator(p), dq = denominator(q);
  if (d % dq != 0) throw DomainError("den(q) = " + dq.get_str() + " does not divide den(p) = " + d.get_str());
  std::size_t m = p.size();
  std::vector<Integer> num;
  for (const auto& c : p) num.push_back(c.numerator() * (d / c.denominator()));
  // sum a_i num_i + a_m d = 1
  std::vector<Integer> coef(m + 1, Integer(0));
  Integer g = d;
  coef[m] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    Integer s, t, ng;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), num[i].get_mpz_t());
    for (std::size_t j = 0; j < m + 1; ++j) coef[j] *= s;
    coef[i] = t;
    g = ng;
  }
  if (g != 1) throw InternalError("reachability: coordinates not coprime with the denominator");
  // normalize coefficients into (-d/2, d/2]; small slopes keep the synthesized formula small
  for (std::size_t i = 0; i < m; ++i) coef[i] = symmetric_mod(coef[i], d);
  if (m == 2 && d.fits_slong_p() && d.get_si() <= 1'000'000) smallest_pair(num, d, coef);
  Integer acc(0);
  for (std::size_t i = 0; i < m; ++i) acc += coef[i] * num[i];
  Integer rest = 1 - acc;
  if (rest % d != 0) throw InternalError("reachability: normalization failed");
  std::vector<Integer> a(coef.begin(), coef.begin() + static_cast<long>(m));
  Formula unit = clamped_affine_formula(a, rest / d);  // equals 1/d at p
  std::vector<Formula> images;
  for (std::size_t i = 0; i < m; ++i) {
    Integer k = q[i].numerator() * (d / q[i].denominator());
    if (!k.fits_ulong_p() || k.get_ui() > 100000) throw CapExceeded("reachability multiplier too large");
    images.push_back(oplus_power(unit, k.get_ui()));
  }
  return Substitution(std::move(images));
}

std::vector<Point> full_rational_orbit(std::size_t n, long d, std::size_t cap) {
  if (d < 1) throw DomainError("denominator must be positive");
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= double(d + 1);
  if (count > double(cap)) throw CapExceeded("(d+1)^n exceeds the point cap");
  std::vector<Point> out;
  std::vector<long> idx(n, 0);
  while (true) {
    Point p;
    for (auto k : idx) p.emplace_back(Integer(k), Integer(d));
    out.push_back(std::move(p));
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] <= d) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

bool closed_under(const std::vector<Point>& set, const InducedMap& S) {
  std::unordered_set<Point, PointHash> members(set.begin(), set.end());
  for (const auto& p : set)
    if (!members.count(S(p))) return false;
  return true;
}

HomeoReport validate_homeomorphism(const PwlMap& S) {
  HomeoReport r;
  if (auto p = pwl_map_problem(S); !p.empty()) {
    r.problem = p;
    return r;
  }
  bool same = true;
  for (const auto& m : S.pieces) {
    Integer d = m.det();
    r.dets.push_back(d.fits_slong_p() ? d.get_si() : 0);
    if (r.dets.back() != r.dets.front()) same = false;
  }
  if (same && (r.dets.front() == 1 || r.dets.front() == -1)) r.common_det = r.dets.front();
  CellComplex image;
  image.dim = S.dim();
  r.image_measure = Rational(0);
  for (std::size_t k = 0; k < S.complex.size(); ++k) {
    std::vector<std::size_t> cell;
    for (auto v : S.complex.cells[k]) {
      cell.push_back(image.vertices.size());
      image.vertices.push_back(S.pieces[k].apply(S.complex.vertices[v]));
    }
    image.cells.push_back(cell);
    r.image_measure += image.measure(k);
  }
  std::string tiling = complex_problem(image);
  r.invertible = tiling.empty();
  if (!r.invertible) r.problem = "image cells do not tile the cube: " + tiling;
  r.measure_preserving = r.invertible && r.common_det.has_value();
  return r;
}

Point tsujii_differential(const PwlMap& S, const Point& p, const Point& v) {
  int d = S.dim();
  if (p.size() != std::size_t(d) || v.size() != std::size_t(d)) throw DomainError("dimension mismatch");
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); }))
    return Point(std::size_t(d), Rational(0));
  const auto& C = S.complex;
  auto enters = [&](std::size_t k, bool strict) {
    const auto& cell = C.cells[k];
    if (d == 1) {
      Rational a = C.vertices[cell[0]][0], b = C.vertices[cell[1]][0];
      if (b < a) std::swap(a, b);
      if (p[0] < a || p[0] > b) return false;
      return v[0].sign() > 0 ? p[0] < b : p[0] > a;
    }
    std::array<Point, 3> t{C.vertices[cell[0]], C.vertices[cell[1]], C.vertices[cell[2]]};
    auto orient = [](const Point& a, const Point& b, const Point& c) {
      return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    };
    if (orient(t[0], t[1], t[2]).sign() < 0) std::swap(t[1], t[2]);
    for (int e = 0; e < 3; ++e) {
      const Point& a = t[e];
      const Point& b = t[(e + 1) % 3];
      int s = orient(a, b, p).sign();
      if (s < 0) return false;
      if (s == 0) {
        // direction relative to the edge line
        int dv = ((b[0] - a[0]) * v[1] - (b[1] - a[1]) * v[0]).sign();
        if (dv < 0 || (strict && dv == 0)) return false;
      }
    }
    return true;
  };
  for (bool strict : {true, false})
    for (std::size_t k = 0; k < C.size(); ++k)
      if (enters(k, strict)) return S.pieces[k].linear(v);
  throw DomainError("the ray leaves the cube immediately");
}

namespace {

std::vector<Point> grid_points(const Box& A, long den) {
  std::vector<std::vector<Rational>> axis;
  for (const auto& [lo, hi] : A.sides) {
    std::vector<Rational> vals;
    for (long k = 0; k <= den; ++k) {
      Rational x{Integer(k), Integer(den)};
      if (x > lo && x < hi) vals.push_back(x);
    }
    axis.push_back(std::move(vals));
  }
  std::vector<Point> out{{}};
  for (const auto& vals : axis) {
    std::vector<Point> next;
    for (const auto& p : out)
      for (const auto& x : vals) {
        Point q = p;
        q.push_back(x);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::optional<BoxHit> box_hitting_search(const InducedMap& Q, const InducedMap& R, const Box& A, const Box& B,
                                         std::size_t h_max, std::size_t k_max, long grid_den, unsigned threads) {
  if (Q.arity() != R.arity()) throw DomainError("Q and R must have the same arity");
  if (A.sides.size() != Q.arity() || B.sides.size() != Q.arity()) throw DomainError("box dimension mismatch");
  if (A.volume().is_zero() || B.volume().is_zero()) throw DomainError("boxes must be nondegenerate");
  if (grid_den < 1) throw DomainError("grid denominator must be positive");
  std::vector<Point> pts = grid_points(A, grid_den);
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;  // h, k, point index
  auto search = [&](std::size_t begin, std::size_t end, std::optional<Key>& best) {
    for (std::size_t i = begin; i < end; ++i) {
      Point a = pts[i];
      for (std::size_t h = 0; h <= h_max; ++h) {
        if (best && h > std::get<0>(*best)) break;
        Point b = a;
        for (std::size_t k = 0; k <= k_max; ++k) {
          if (best && Key{h, k, i} >= *best) break;
          if (B.contains_open(b)) {
            best = Key{h, k, i};
            break;
          }
          if (k < k_max) b = R(b);
        }
        if (h < h_max) a = Q(a);
      }
    }
  };
  std::optional<Key> best;
  unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pts.size() ? pts.size() : 1)));
  if (nt == 1) {
    search(0, pts.size(), best);
  } else {
    std::vector<std::optional<Key>> part(nt);
    std::vector<std::thread> pool;
    std::size_t chunk = (pts.size() + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] { search(std::min(pts.size(), t * chunk), std::min(pts.size(), (t + 1) * chunk), part[t]); });
    for (auto& th : pool) th.join();
    for (const auto& p : part)
      if (p && (!best || *p < *best)) best = p;
  }
  if (!best) return std::nullopt;
  return BoxHit{std::get<0>(*best), std::get<1>(*best), pts[std::get<2>(*best)]};
}

AverageTruth average_truth_value(const Formula& r, std::size_t k, const Substitution& sigma, const Box& mu_box,
                                 std::size_t piece_cap) {
  int n = static_cast<int>(sigma.arity());
  if (n < 1 || n > 2) throw DomainError("average truth value needs arity 1 or 2");
  if (r.arity() > sigma.arity()) throw DomainError("formula mentions variables beyond the substitution arity");
  Rational vol = mu_box.volume();
  if (vol.is_zero()) throw DomainError("measure box is degenerate");
  // component PWL functions of sigma^j, composed through the image programs
  std::vector<PwlFunction> comp;
  for (int i = 0; i < n; ++i) comp.push_back(PwlFunction::coordinate(n, static_cast<std::size_t>(i)));
  Program rp = Program::compile(r);
  std::vector<Program> sp;
  for (const auto& s : sigma.images()) sp.push_back(Program::compile(s));
  struct Alg {
    int dim;
    PwlFunction zero() const { return PwlFunction::constant(dim, 0); }
    PwlFunction one() const { return PwlFunction::constant(dim, 1); }
    PwlFunction star(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Star, a, b); }
    PwlFunction impl(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Impl, a, b); }
    PwlFunction neg(const PwlFunction& a) const { return pwl_combine(PwlOp::Neg, a); }
    PwlFunction conj(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Min, a, b); }
    PwlFunction disj(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::Max, a, b); }
    PwlFunction oplus(const PwlFunction& a, const PwlFunction& b) const { return pwl_combine(PwlOp::OPlus, a, b); }
  } alg{n};
  AverageTruth out;
  for (std::size_t j = 0;; ++j) {
    PwlFunction f = run_program(rp, alg, std::span<const PwlFunction>(comp));
    if (j == 0) out.f_lambda = pwl_integral(f, Box::unit(n)).value;
    out.sequence.push_back(pwl_integral(f, mu_box).value / vol);
    if (j == k) break;
    std::vector<PwlFunction> next;
    for (const auto& p : sp) {
      next.push_back(run_program(p, alg, std::span<const PwlFunction>(comp)));
      if (next.back().pieces.size() > piece_cap) throw CapExceeded("piece count exceeds the cap");
    }
    comp = std::move(next);
  }
  return out;
}

}  // namespace mvdyn
