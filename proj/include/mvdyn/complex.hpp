#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mvdyn/rational.hpp"

namespace mvdyn {

// Rational simplicial complex covering [0,1]^d, d in {1,2}. Top cells are
// intervals (2 vertex indices) or triangles (3 vertex indices).
struct CellComplex {
  int dim = 1;
  std::vector<Point> vertices;
  std::vector<std::vector<std::size_t>> cells;

  // [0,1], or the square cut along the diagonal (0,0)-(1,1).
  static CellComplex unit(int dim);
  std::size_t size() const { return cells.size(); }
  Point centroid(std::size_t cell) const;
  Rational measure(std::size_t cell) const;
  bool contains(std::size_t cell, const Point& p) const;  // closed cell

  friend bool operator==(const CellComplex&, const CellComplex&) = default;
};

// Empty string when valid, else a description of the first violation found.
std::string complex_problem(const CellComplex& c);
void validate_complex(const CellComplex& c);  // throws DomainError

// Lowest-index closed cell containing p.
std::optional<std::size_t> locate_cell(const CellComplex& c, const Point& p);

struct Refinement {
  CellComplex complex;
  std::vector<std::size_t> from_a, from_b;  // containing cell in each input
};

Refinement refine(const CellComplex& a, const CellComplex& b);
CellComplex common_refinement(const CellComplex& a, const CellComplex& b);

// Triangles are stored counterclockwise after normalization.
CellComplex normalized(const CellComplex& c);

}  // namespace mvdyn
