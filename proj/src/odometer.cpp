#include "mvdyn/odometer.hpp"

#include <algorithm>
#include <bit>

#include "mvdyn/errors.hpp"

namespace mvdyn {

namespace {

constexpr std::uint64_t kProj[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

std::size_t word_count(std::size_t n) { return n >= 6 ? (std::size_t(1) << (n - 6)) : 1; }

void check_table_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw CapExceeded("truth tables over " + std::to_string(n) + " variables exceed the cap of " +
                                 std::to_string(cap));
}

}  // namespace

TruthTable::TruthTable(std::size_t n, bool value) : n_(n), words_(word_count(n), value ? ~0ull : 0ull) { trim(); }

void TruthTable::trim() {
  if (n_ < 6) words_[0] &= (1ull << (1u << n_)) - 1;
}

void TruthTable::set(std::size_t p, bool v) {
  if (v) words_[p >> 6] |= 1ull << (p & 63);
  else words_[p >> 6] &= ~(1ull << (p & 63));
}

bool TruthTable::all_ones() const { return *this == TruthTable(n_, true); }
bool TruthTable::all_zeros() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}
std::size_t TruthTable::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::string TruthTable::hex() const {
  static const char* digits = "0123456789abcdef";
  std::size_t nd = std::max<std::size_t>(1, size() / 4);
  std::string s(nd, '0');
  for (std::size_t d = 0; d < nd; ++d) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      std::size_t p = d * 4 + b;
      if (p < size() && get(p)) v |= 1u << b;
    }
    s[nd - 1 - d] = digits[v];
  }
  return s;
}

TruthTable TruthTable::from_hex(std::size_t n, std::string_view hex) {
  TruthTable t(n);
  std::size_t nd = std::max<std::size_t>(1, t.size() / 4);
  if (hex.size() != nd)
    throw DomainError("truth table over " + std::to_string(n) + " variables needs " + std::to_string(nd) + " hex digits");
  for (std::size_t d = 0; d < nd; ++d) {
    char c = hex[nd - 1 - d];
    unsigned v;
    if (c >= '0' && c <= '9') v = unsigned(c - '0');
    else if (c >= 'a' && c <= 'f') v = unsigned(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = unsigned(c - 'A' + 10);
    else throw DomainError(std::string("bad hex digit '") + c + "'");
    for (std::size_t b = 0; b < 4; ++b) {
      std::size_t p = d * 4 + b;
      if (v >> b & 1u) {
        if (p >= t.size()) throw DomainError("hex value too large for the table");
        t.set(p, true);
      }
    }
  }
  return t;
}

TruthTable TruthTable::projection(std::size_t n, std::size_t i) {
  if (i >= n) throw DomainError("projection index out of range");
  TruthTable t(n);
  for (std::size_t w = 0; w < t.words_.size(); ++w)
    t.words_[w] = i < 6 ? kProj[i] : (((w >> (i - 6)) & 1u) ? ~0ull : 0ull);
  t.trim();
  return t;
}

TruthTable TruthTable::operator&(const TruthTable& o) const {
  TruthTable t = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) t.words_[w] &= o.words_[w];
  return t;
}
TruthTable TruthTable::operator|(const TruthTable& o) const {
  TruthTable t = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) t.words_[w] |= o.words_[w];
  return t;
}
TruthTable TruthTable::operator^(const TruthTable& o) const {
  TruthTable t = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) t.words_[w] ^= o.words_[w];
  return t;
}
TruthTable TruthTable::operator~() const {
  TruthTable t = *this;
  for (auto& w : t.words_) w = ~w;
  t.trim();
  return t;
}

TruthTableCache::TruthTableCache(std::size_t n, std::size_t cap) : n_(n) {
  check_table_cap(n, cap);
  for (std::size_t i = 0; i < n; ++i) proj_.push_back(TruthTable::projection(n, i));
}

const TruthTable& TruthTableCache::table(const Formula& root) {
  if (root.arity() > n_)
    throw DomainError("formula mentions x" + std::to_string(root.arity() - 1) + " but only " + std::to_string(n_) +
                      " variables are available");
  if (auto it = memo_.find(root.id()); it != memo_.end()) return it->second;
  keep_.push_back(root);
  std::vector<std::pair<Formula, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [f, ready] = stack.back();
    stack.pop_back();
    if (memo_.count(f.id())) continue;
    Kind k = f.kind();
    if (!ready && k != Kind::Var && k != Kind::Zero && k != Kind::One) {
      stack.push_back({f, true});
      stack.push_back({f.lhs(), false});
      if (k != Kind::Neg) stack.push_back({f.rhs(), false});
      continue;
    }
    TruthTable t;
    auto L = [&]() -> const TruthTable& { return memo_.at(f.lhs().id()); };
    auto R = [&]() -> const TruthTable& { return memo_.at(f.rhs().id()); };
    switch (k) {
      case Kind::Var: t = proj_[f.var_index()]; break;
      case Kind::Zero: t = TruthTable(n_, false); break;
      case Kind::One: t = TruthTable(n_, true); break;
      case Kind::Star:
      case Kind::And: t = L() & R(); break;
      case Kind::Impl: t = ~L() | R(); break;
      case Kind::Neg: t = ~L(); break;
      case Kind::Or:
      case Kind::OPlus: t = L() | R(); break;
    }
    memo_.emplace(f.id(), std::move(t));
  }
  return memo_.at(root.id());
}

TruthTable truth_table(const Formula& f, std::size_t n, std::size_t cap) {
  TruthTableCache c(n, cap);
  return c.table(f);
}

Substitution odometer_substitution(std::size_t n) {
  if (n < 1) throw DomainError("odometer needs n >= 1");
  std::vector<Formula> img{neg(Formula::var(0))};
  std::vector<Formula> prefix;
  for (std::size_t i = 1; i < n; ++i) {
    prefix.push_back(Formula::var(i - 1));
    img.push_back(sym_diff(Formula::var(i), conj_all(prefix)));
  }
  return Substitution(std::move(img));
}

std::vector<std::size_t> BoolPermutation::cycle_lengths() const {
  std::vector<std::size_t> out;
  std::vector<bool> seen(image.size(), false);
  for (std::size_t p = 0; p < image.size(); ++p) {
    if (seen[p]) continue;
    std::size_t len = 0;
    for (std::size_t q = p; !seen[q]; q = image[q]) {
      seen[q] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

BoolPermutation induced_permutation(const Substitution& sigma, std::size_t cap) {
  std::size_t n = sigma.arity();
  if (n > 31) check_table_cap(n, std::min<std::size_t>(cap, 31));
  TruthTableCache c(n, cap);
  BoolPermutation s;
  s.image.assign(std::size_t(1) << n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const TruthTable& t = c.table(sigma.image(i));
    for (std::size_t p = 0; p < s.image.size(); ++p)
      if (t.get(p)) s.image[p] |= std::uint32_t(1) << i;
  }
  return s;
}

BoolPermutation odometer_induced_permutation(std::size_t n, std::size_t cap) {
  BoolPermutation s = induced_permutation(odometer_substitution(n), cap);
  std::size_t size = s.image.size();
  for (std::size_t p = 0; p < size; ++p)
    if (s.image[p] != (p + 1) % size)
      throw InternalError("odometer maps valuation " + std::to_string(p) + " to " + std::to_string(s.image[p]));
  return s;
}

TruthTable table_map(const BoolPermutation& s, const TruthTable& t) {
  if (s.image.size() != t.size()) throw DomainError("permutation and table sizes differ");
  TruthTable out(t.n());
  for (std::size_t p = 0; p < t.size(); ++p) out.set(p, t.get(s.image[p]));
  return out;
}

Proof derive_from_nontautology(const Formula& r, const Formula& target, std::size_t n, std::size_t cap) {
  if (n < 1) throw DomainError("need n >= 1");
  if (n > cap)
    throw CapExceeded("derivation over " + std::to_string(n) + " variables exceeds the cap of " + std::to_string(cap));
  if (r.arity() > n || target.arity() > n) throw DomainError("formulas must only mention x0..x" + std::to_string(n - 1));
  if (truth_table(r, n).all_ones()) throw DomainError("hypothesis is a Boolean tautology");
  Substitution s = odometer_substitution(n);
  PartialSubstitution sigma;
  for (std::size_t i = 0; i < n; ++i) sigma.push_back({i, s.image(i)});

  Proof p;
  p.hypotheses = {r};
  p.lines.push_back({r, Justification::hypothesis(0)});
  Formula acc = r, last = r;
  std::size_t acc_line = 1, last_line = 1;
  std::size_t steps = (std::size_t(1) << n) - 1;
  for (std::size_t k = 0; k < steps; ++k) {
    last = s.apply(last);
    p.lines.push_back({last, Justification::subst(last_line, sigma)});
    last_line = p.lines.size();
    Formula both = conj(acc, last);
    p.lines.push_back({impl(acc, impl(last, both)), Justification::axiom()});
    p.lines.push_back({impl(last, both), Justification::mp(acc_line, p.lines.size())});
    p.lines.push_back({both, Justification::mp(last_line, p.lines.size())});
    acc = both;
    acc_line = p.lines.size();
  }
  p.lines.push_back({impl(acc, target), Justification::axiom()});
  p.lines.push_back({target, Justification::mp(acc_line, p.lines.size())});
  return p;
}

}  // namespace mvdyn
