#include "mvdyn/rational.hpp"

#include <ostream>

#include "mvdyn/errors.hpp"

namespace mvdyn {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("malformed integer '" + std::string(s) + "'");
  Integer v(std::string(s), 10);
  return neg ? Integer(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
      throw DomainError("malformed rational '" + std::string(text) + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    Integer num = Integer(std::string(ip), 10) * den;
    if (!fp.empty()) num += Integer(std::string(fp), 10);
    if (neg) num = -num;
    return Rational(num, den);
  }
  return Rational(parse_int(text));
}

std::string Rational::str() const { return q_.get_str(); }

std::size_t Rational::hash() const {
  std::size_t h = mpz_fdiv_ui(q_.get_num_mpz_t(), 1000000007UL);
  h = h * 1315423911u ^ mpz_fdiv_ui(q_.get_den_mpz_t(), 998244353UL);
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::size_t PointHash::operator()(const Point& p) const {
  std::size_t h = p.size();
  for (const auto& c : p) h = h * 0x9e3779b97f4a7c15ULL ^ (c.hash() + (h << 6) + (h >> 2));
  return h;
}

Point parse_point(std::string_view text) {
  Point p;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    p.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return p;
}

std::string point_str(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += p[i].str();
  }
  return s;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace mvdyn
