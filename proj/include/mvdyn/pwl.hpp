#pragma once

#include <span>
#include <string>
#include <vector>

#include "mvdyn/complex.hpp"
#include "mvdyn/formula.hpp"
#include "mvdyn/rational.hpp"

namespace mvdyn {

// a . x + b with integer coefficients.
struct AffinePiece {
  std::vector<Integer> a;
  Integer b;

  Rational eval(const Point& p) const;
  static AffinePiece constant(int dim, long c);
  static AffinePiece coordinate(int dim, std::size_t i);
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

// Continuous piecewise-affine [0,1]^d -> [0,1] with one integer piece per cell.
struct PwlFunction {
  CellComplex complex;
  std::vector<AffinePiece> pieces;

  int dim() const { return complex.dim; }
  Rational eval(const Point& p) const;

  static PwlFunction constant(int dim, long c);
  static PwlFunction coordinate(int dim, std::size_t i);
};

std::string pwl_problem(const PwlFunction& f);  // empty when valid
void validate_pwl(const PwlFunction& f);        // throws DomainError

enum class PwlOp { Star, Impl, Min, Max, OPlus, Neg };

PwlFunction pwl_combine(PwlOp op, const PwlFunction& f, const PwlFunction* g = nullptr);
PwlFunction pwl_combine(PwlOp op, const PwlFunction& f, const PwlFunction& g);
PwlFunction pwl_from_formula(const Formula& f, int dim);
Rational pwl_eval(const PwlFunction& f, const Point& p);

struct MinValue {
  Rational value;
  Point witness;  // lexicographically smallest minimizing vertex
};
MinValue pwl_min_value(const PwlFunction& f);
bool pwl_equal(const PwlFunction& f, const PwlFunction& g);

struct Box {
  std::vector<std::pair<Rational, Rational>> sides;
  static Box unit(int dim);
  static Box parse(std::string_view text);  // "lo:hi,lo:hi"
  Rational volume() const;
  bool contains(const Point& p) const;        // closed
  bool contains_open(const Point& p) const;
};

struct Integral {
  Rational value;
  bool degenerate = false;  // zero-measure box: value is 0
};
Integral pwl_integral(const PwlFunction& f, const Box& box);

// Lattice (max-min) synthesis over clamped pieces; works for d <= 2 and is
// checked by round trip.
Formula lattice_formula(const PwlFunction& f);
Formula pwl_to_formula_1d(const PwlFunction& f);
// (sum a_i x_i + b) clamped to [0,1], as a formula over x_0..x_{d-1}.
Formula clamped_affine_formula(const std::vector<Integer>& a, const Integer& b);

// Merge adjacent 1-D cells carrying identical pieces.
PwlFunction simplify_1d(const PwlFunction& f);
// Remove 2-D vertices whose star is one piece, or two pieces split by a line
// through the vertex, and retriangulate the hole.
PwlFunction simplify_2d(const PwlFunction& f);

struct RationalAffineMap {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> B;
  bool integral() const;
  Point apply(const Point& p) const;
};

// The affine map sending source[i] to target[i], via homogeneous matrices.
RationalAffineMap affine_from_simplex_pair(std::span<const Point> source, std::span<const Point> target);

}  // namespace mvdyn
