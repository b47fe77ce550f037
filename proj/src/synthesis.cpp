#include <algorithm>
#include <map>

#include "mvdyn/errors.hpp"
#include "mvdyn/pwl.hpp"

namespace mvdyn {

namespace {

// clamp(sum c_i y_i + b) over literals y_i, peeling one unit at a time:
// clamp(t + y) = (clamp(t + 1) * y) (+) (clamp(t) & !y)
class ClampBuilder {
 public:
  explicit ClampBuilder(std::vector<Formula> lits) : lits_(std::move(lits)) {}

  Formula build(std::vector<long> c, long b) {
    long total = 0;
    for (long x : c) total += x;
    if (b >= 1) return Formula::one();
    if (total + b <= 0) return Formula::zero();
    auto key = std::make_pair(c, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula out;
    if (b == 0 || total + b == 1) {
      std::vector<Formula> terms;
      for (std::size_t i = 0; i < c.size(); ++i)
        for (long k = 0; k < c[i]; ++k) terms.push_back(lits_[i]);
      out = terms.front();
      for (std::size_t i = 1; i < terms.size(); ++i) out = b == 0 ? oplus(out, terms[i]) : star(out, terms[i]);
    } else {
      std::size_t i = 0;
      while (c[i] == 0) ++i;
      --c[i];
      Formula hi = build(c, b + 1);
      Formula lo = build(c, b);
      const Formula& y = lits_[i];
      out = oplus(star(hi, y), conj(lo, neg(y)));
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  std::vector<Formula> lits_;
  std::map<std::pair<std::vector<long>, long>, Formula> memo_;
};

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw CapExceeded("coefficient too large for synthesis");
  return z.get_si();
}

}  // namespace

Formula clamped_affine_formula(const std::vector<Integer>& a, const Integer& b) {
  std::vector<Formula> lits;
  std::vector<long> c;
  long bb = to_long(b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    long ai = to_long(a[i]);
    if (ai == 0) continue;
    if (ai > 0) {
      lits.push_back(Formula::var(i));
      c.push_back(ai);
    } else {
      // a x = |a| (1 - x) - |a|
      lits.push_back(neg(Formula::var(i)));
      c.push_back(-ai);
      bb += ai;
    }
  }
  ClampBuilder cb(lits);
  return cb.build(c, bb);
}

Formula lattice_formula(const PwlFunction& input) {
  PwlFunction f = input.dim() == 1 ? simplify_1d(input) : input;
  std::vector<AffinePiece> uniq;
  std::vector<std::size_t> idx;
  for (const auto& p : f.pieces) {
    auto it = std::find(uniq.begin(), uniq.end(), p);
    idx.push_back(static_cast<std::size_t>(it - uniq.begin()));
    if (it == uniq.end()) uniq.push_back(p);
  }
  // S_k = pieces dominating the active piece on cell k
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t k = 0; k < f.complex.size(); ++k) {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < uniq.size(); ++j) {
      bool above = true;
      for (auto v : f.complex.cells[k]) {
        const Point& p = f.complex.vertices[v];
        if (uniq[j].eval(p) < uniq[idx[k]].eval(p)) {
          above = false;
          break;
        }
      }
      if (above) s.push_back(j);
    }
    sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::vector<std::vector<std::size_t>> kept;
  for (const auto& s : sets) {
    bool dominated = false;
    for (const auto& k : kept)
      if (std::includes(s.begin(), s.end(), k.begin(), k.end())) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(s);
  }
  std::map<std::size_t, Formula> clamp;
  auto clamp_of = [&](std::size_t j) {
    auto it = clamp.find(j);
    if (it == clamp.end()) it = clamp.emplace(j, clamped_affine_formula(uniq[j].a, uniq[j].b)).first;
    return it->second;
  };
  std::vector<Formula> terms;
  for (const auto& s : kept) {
    std::vector<Formula> mins;
    for (auto j : s) mins.push_back(clamp_of(j));
    terms.push_back(conj_all(mins));
  }
  return disj_all(terms);
}

Formula pwl_to_formula_1d(const PwlFunction& f) {
  if (f.dim() != 1) throw DomainError("pwl_to_formula_1d needs a 1-dimensional function");
  return lattice_formula(f);
}

}  // namespace mvdyn
