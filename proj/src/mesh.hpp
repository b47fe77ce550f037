#pragma once

#include <array>
#include <map>
#include <vector>

#include "mvdyn/complex.hpp"
#include "mvdyn/rational.hpp"

namespace mvdyn::detail {

using P2 = std::array<Rational, 2>;

Rational orient(const P2& a, const P2& b, const P2& c);

struct Tri {
  std::array<std::size_t, 3> v;
  std::size_t ta = 0, tb = 0;
};

using EdgeKey = std::pair<std::size_t, std::size_t>;
inline EdgeKey edge_key(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Mutable counterclockwise triangulation with per-triangle provenance tags.
class Mesh {
 public:
  std::vector<P2> pts;
  std::vector<std::array<double, 2>> approx;
  std::vector<Tri> tris;

  static Mesh from_complex(const CellComplex& c);
  CellComplex to_complex() const;

  std::size_t add_vertex(const P2& p);
  std::optional<std::size_t> find_vertex(const P2& p) const;
  int orient_sign(std::size_t a, std::size_t b, std::size_t c) const;

  // Replace every triangle having split edges by its local retriangulation.
  void split(const std::map<EdgeKey, std::size_t>& splits);
  std::size_t insert_point(const P2& p);
  void insert_segment(std::size_t u, std::size_t v);

 private:
  std::map<P2, std::size_t> lookup_;
};

// Uniform-bucket point location over a triangulation.
class Locator {
 public:
  explicit Locator(const CellComplex& c, std::size_t grid = 0);
  std::optional<std::size_t> locate(const P2& p) const;

 private:
  const CellComplex& c_;
  std::size_t g_;
  std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace mvdyn::detail
