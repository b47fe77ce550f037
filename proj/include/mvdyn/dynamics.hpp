#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvdyn/complex.hpp"
#include "mvdyn/pwl.hpp"
#include "mvdyn/substitution.hpp"

namespace mvdyn {

struct AffineMapZ {
  std::vector<std::vector<Integer>> A;
  std::vector<Integer> B;

  Point apply(const Point& p) const;
  Point linear(const Point& v) const;  // A v
  Integer det() const;
  friend bool operator==(const AffineMapZ&, const AffineMapZ&) = default;
};

// Continuous piecewise-affine self-map of [0,1]^d, d <= 2.
struct PwlMap {
  CellComplex complex;
  std::vector<AffineMapZ> pieces;

  int dim() const { return complex.dim; }
  Point eval(const Point& p) const;
  PwlFunction component(std::size_t i) const;
};

std::string pwl_map_problem(const PwlMap& m);  // empty when valid

// The self-map p -> (s_0(p), ..., s_{n-1}(p)) of a substitution.
class InducedMap {
 public:
  explicit InducedMap(Substitution sigma);

  std::size_t arity() const { return sigma_.arity(); }
  const Substitution& substitution() const { return sigma_; }
  const std::optional<PwlMap>& pwl() const { return pwl_; }
  Point operator()(const Point& p) const;
  void eval_double(std::vector<double>& p, std::vector<double>& scratch) const;

 private:
  Substitution sigma_;
  std::vector<Program> programs_;
  std::optional<PwlMap> pwl_;
};

InducedMap induced_map(const Substitution& sigma);
Point map_eval(const InducedMap& S, const Point& p);
// Assemble the exact PWL form of a substitution of arity 1 or 2.
PwlMap pwl_map_from_substitution(const Substitution& sigma);

Integer denominator(const Point& p);

struct Orbit {
  Point start;
  std::vector<Point> points;  // points[k+1] = S(points[k])
  bool cycle = false;         // false: truncated after max_steps
  std::size_t preperiod = 0, period = 0, max_steps = 0;
  std::vector<Integer> denominators;
};
Orbit orbit(const InducedMap& S, const Point& p, std::size_t max_steps);

// sigma with S(p) = q; requires den(q) | den(p).
Substitution reachability_substitution(const Point& p, const Point& q);

// {q in [0,1]^n : den(q) | d}, lexicographic.
std::vector<Point> full_rational_orbit(std::size_t n, long d, std::size_t cap = 1'000'000);
bool closed_under(const std::vector<Point>& set, const InducedMap& S);

struct Rotation {
  Substitution sigma;
  PwlMap map;
  std::vector<Point> inner;  // p0, p1, p2, p0', p1', p2'
};
// Piecewise-integral homeomorphism of the square rotating the triangles
// (1/4,1/4),(1/2,1/4),(1/4,1/2) and their mirror images about (1/2,1/2).
Rotation rotation_homeomorphism();

struct HomeoReport {
  bool invertible = false;
  std::optional<long> common_det;  // set when every det(A_j) is the same +-1
  std::vector<long> dets;
  bool measure_preserving = false;
  Rational image_measure;
  std::string problem;
};
HomeoReport validate_homeomorphism(const PwlMap& S);

// One-sided directional derivative lim_{h->0+} (S(p + h v) - S(p)) / h.
Point tsujii_differential(const PwlMap& S, const Point& p, const Point& v);

struct BoxHit {
  std::size_t h = 0, k = 0;
  Point witness;
};
// Smallest (h, k) in lexicographic order with R^k(Q^h(a)) in the open box B for
// a grid point a (denominator grid_den) in the open box A.
std::optional<BoxHit> box_hitting_search(const InducedMap& Q, const InducedMap& R, const Box& A, const Box& B,
                                         std::size_t h_max, std::size_t k_max, long grid_den,
                                         unsigned threads = 1);

struct Statistics {
  std::size_t boxes_per_axis = 0;
  std::vector<double> frequency;  // row-major over box indices, x_0 slowest
  double max_discrepancy = 0;
  std::size_t iterations = 0;
};
// Floating-point iteration with a seeded jitter of the given amplitude per
// step (0 disables it); reflected back into the cube.
Statistics empirical_statistics(const InducedMap& S, std::vector<double> start, std::size_t iterations,
                                std::size_t boxes_per_axis, std::uint64_t seed, double jitter = 1e-12);

struct AverageTruth {
  std::vector<Rational> sequence;  // f_mu(sigma^j(r)), j = 0..k
  Rational f_lambda;               // f over the whole cube
};
AverageTruth average_truth_value(const Formula& r, std::size_t k, const Substitution& sigma, const Box& mu_box,
                                 std::size_t piece_cap = 200'000);

}  // namespace mvdyn
