#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvdyn/formula.hpp"

namespace mvdyn {

// x_i -> images[i] for i < arity; images only mention x_0..x_{arity-1}.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::vector<Formula> images);

  static Substitution identity(std::size_t n);
  // Parses "f0; f1; ..." into an arity-n substitution (n = number of images).
  static Substitution parse(std::string_view text);

  std::size_t arity() const { return images_.size(); }
  const Formula& image(std::size_t i) const { return images_.at(i); }
  const std::vector<Formula>& images() const { return images_; }

  Formula apply(const Formula& f) const;
  std::string str() const;

 private:
  std::vector<Formula> images_;
};

Formula apply_substitution(const Substitution& sigma, const Formula& f);
// x_i -> sigma(tau(x_i))
Substitution compose_substitutions(const Substitution& sigma, const Substitution& tau);
// sigma applied k times to f
Formula iterate_substitution(const Substitution& sigma, const Formula& f, std::size_t k);

// Partial substitution used by proof steps: only listed variables change.
Formula apply_partial(const std::vector<std::pair<std::size_t, Formula>>& sigma, const Formula& f);

// Builders for commonly used substitutions.
Formula tent_formula(const Formula& x);  // (x & !x) (+) (x & !x)
Substitution tent_substitution(std::size_t n = 1);
Substitution flip_substitution();
// "tent", "tent2", "identity[:n]", "flip", "odometer:n", or explicit "f0; f1"
Substitution named_substitution(std::string_view spec);

}  // namespace mvdyn
