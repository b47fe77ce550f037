#include <algorithm>
#include <cmath>
#include <random>

#include "mvdyn/dynamics.hpp"
#include "mvdyn/errors.hpp"

namespace mvdyn {

Statistics empirical_statistics(const InducedMap& S, std::vector<double> start, std::size_t iterations,
                                std::size_t boxes_per_axis, std::uint64_t seed, double jitter) {
  if (iterations < 1) throw DomainError("iterations must be at least 1");
  if (boxes_per_axis < 1) throw DomainError("need at least one box per axis");
  std::size_t n = S.arity();
  if (start.size() != n) throw DomainError("start point dimension mismatch");
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= boxes_per_axis;
  std::vector<std::size_t> counts(cells, 0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-jitter, jitter);
  std::vector<double> x = std::move(start), scratch;
  auto reflect = [](double v) {
    if (v < 0) v = -v;
    if (v > 1) v = 2 - v;
    return std::clamp(v, 0.0, 1.0);
  };
  for (std::size_t it = 0; it < iterations; ++it) {
    std::size_t idx = 0;
    for (double c : x) {
      auto b = static_cast<std::size_t>(std::min(double(boxes_per_axis - 1), std::floor(c * double(boxes_per_axis))));
      idx = idx * boxes_per_axis + b;
    }
    ++counts[idx];
    S.eval_double(x, scratch);
    if (jitter > 0)
      for (auto& c : x) c = reflect(c + noise(rng));
  }
  Statistics st;
  st.boxes_per_axis = boxes_per_axis;
  st.iterations = iterations;
  double vol = 1.0 / double(cells);
  for (auto c : counts) {
    double f = double(c) / double(iterations);
    st.frequency.push_back(f);
    st.max_discrepancy = std::max(st.max_discrepancy, std::abs(f - vol));
  }
  return st;
}

}  // namespace mvdyn
