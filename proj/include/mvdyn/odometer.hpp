#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mvdyn/deduction.hpp"
#include "mvdyn/formula.hpp"
#include "mvdyn/substitution.hpp"

namespace mvdyn {

inline constexpr std::size_t kDefaultTableCap = 20;

// Boolean function of n variables; bit p is the value at the valuation whose
// bit i is x_i.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(std::size_t n, bool value = false);

  std::size_t n() const { return n_; }
  std::size_t size() const { return std::size_t(1) << n_; }
  bool get(std::size_t p) const { return (words_[p >> 6] >> (p & 63)) & 1u; }
  void set(std::size_t p, bool v);
  bool all_ones() const;
  bool all_zeros() const;
  std::size_t count() const;

  // Index p is bit p of a binary numeral, printed most significant digit first.
  std::string hex() const;
  static TruthTable from_hex(std::size_t n, std::string_view hex);
  static TruthTable projection(std::size_t n, std::size_t i);

  TruthTable operator&(const TruthTable& o) const;
  TruthTable operator|(const TruthTable& o) const;
  TruthTable operator^(const TruthTable& o) const;
  TruthTable operator~() const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  void trim();
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Memoized Boolean evaluation of formula DAGs over a fixed variable count.
class TruthTableCache {
 public:
  explicit TruthTableCache(std::size_t n, std::size_t cap = kDefaultTableCap);
  const TruthTable& table(const Formula& f);
  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
  std::vector<TruthTable> proj_;
  std::unordered_map<const void*, TruthTable> memo_;
  std::vector<Formula> keep_;
};

TruthTable truth_table(const Formula& f, std::size_t n, std::size_t cap = kDefaultTableCap);

// x_0 -> !x_0, x_i -> x_i xor (x_0 & ... & x_{i-1})
Substitution odometer_substitution(std::size_t n);

struct BoolPermutation {
  std::vector<std::uint32_t> image;
  std::vector<std::size_t> cycle_lengths() const;  // sorted descending
};

// The valuation map p -> (sigma(x_i)(p))_i of a Boolean substitution.
BoolPermutation induced_permutation(const Substitution& sigma, std::size_t cap = kDefaultTableCap);
// Same for the odometer; throws InternalError unless it is p -> p+1 mod 2^n.
BoolPermutation odometer_induced_permutation(std::size_t n, std::size_t cap = kDefaultTableCap);
// Table of sigma(f) from the table of f: new[p] = t[S(p)].
TruthTable table_map(const BoolPermutation& s, const TruthTable& t);

inline constexpr std::size_t kDefaultDerivationCap = 8;

// Proof of target from {r} using axioms (Boolean tautologies), MP and the
// odometer substitution only.
Proof derive_from_nontautology(const Formula& r, const Formula& target, std::size_t n,
                               std::size_t cap = kDefaultDerivationCap);

}  // namespace mvdyn
