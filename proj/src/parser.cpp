#include "mvdyn/parser.hpp"

#include <unordered_map>

#include "mvdyn/errors.hpp"

namespace mvdyn {

namespace {

enum class Tok { Var, Zero, One, Not, Star, OPlus, And, Or, Arrow, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::size_t var = 0;
};

constexpr std::size_t kMaxDepth = 4000;

std::string tok_name(Tok t) {
  switch (t) {
    case Tok::Var: return "variable";
    case Tok::Zero: return "0";
    case Tok::One: return "1";
    case Tok::Not: return "!";
    case Tok::Star: return "*";
    case Tok::OPlus: return "(+)";
    case Tok::And: return "&";
    case Tok::Or: return "|";
    case Tok::Arrow: return "->";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
    std::size_t at = pos_;
    if (pos_ >= s_.size()) return {Tok::End, at};
    auto rest = s_.substr(pos_);
    auto take = [&](std::size_t n, Tok t) {
      pos_ += n;
      return Token{t, at};
    };
    if (rest.starts_with("(+)")) return take(3, Tok::OPlus);
    if (rest.starts_with("->")) return take(2, Tok::Arrow);
    if (rest.starts_with("\xC2\xAC")) return take(2, Tok::Not);
    if (rest.starts_with("\xE2\x8B\x86")) return take(3, Tok::Star);
    if (rest.starts_with("\xE2\x8A\x95")) return take(3, Tok::OPlus);
    if (rest.starts_with("\xE2\x88\xA7")) return take(3, Tok::And);
    if (rest.starts_with("\xE2\x88\xA8")) return take(3, Tok::Or);
    if (rest.starts_with("\xE2\x86\x92")) return take(3, Tok::Arrow);
    switch (rest[0]) {
      case '!': return take(1, Tok::Not);
      case '*': return take(1, Tok::Star);
      case '&': return take(1, Tok::And);
      case '|': return take(1, Tok::Or);
      case '(': return take(1, Tok::LParen);
      case ')': return take(1, Tok::RParen);
      case '0': return take(1, Tok::Zero);
      case '1': return take(1, Tok::One);
      case 'x': {
        std::size_t j = 1;
        std::size_t idx = 0;
        while (j < rest.size() && rest[j] >= '0' && rest[j] <= '9') {
          if (idx > (std::size_t(1) << 40)) throw ParseError(at, {"variable"}, "variable index too large");
          idx = idx * 10 + std::size_t(rest[j] - '0');
          ++j;
        }
        if (j == 1) throw ParseError(at + 1, {"digit"}, "expected digits after 'x' at offset " + std::to_string(at + 1));
        pos_ += j;
        Token t{Tok::Var, at};
        t.var = idx;
        return t;
      }
      default:
        throw ParseError(at, {}, "unexpected character at offset " + std::to_string(at));
    }
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { cur_ = lex_.next(); }

  Formula parse_all() {
    Formula f = parse_impl();
    if (cur_.kind != Tok::End) fail({Tok::Arrow, Tok::Or, Tok::And, Tok::OPlus, Tok::Star, Tok::End});
    return f;
  }

 private:
  [[noreturn]] void fail(std::vector<Tok> expected) {
    std::vector<std::string> names;
    std::string msg = "syntax error at offset " + std::to_string(cur_.offset) + ": found " + tok_name(cur_.kind) +
                      ", expected one of:";
    for (Tok t : expected) {
      names.push_back(tok_name(t));
      msg += " " + names.back();
    }
    throw ParseError(cur_.offset, names, msg);
  }

  void advance() { cur_ = lex_.next(); }

  Formula parse_impl() {
    Guard g(*this);
    Formula l = parse_left(Tok::Or, Kind::Or, &Parser::parse_and);
    if (cur_.kind == Tok::Arrow) {
      advance();
      return impl(l, parse_impl());
    }
    return l;
  }

  Formula parse_left(Tok op, Kind kind, Formula (Parser::*sub)()) {
    Formula l = (this->*sub)();
    while (cur_.kind == op) {
      advance();
      l = Formula::make(kind, l, (this->*sub)());
    }
    return l;
  }

  Formula parse_and() { return parse_left(Tok::And, Kind::And, &Parser::parse_oplus); }
  Formula parse_oplus() { return parse_left(Tok::OPlus, Kind::OPlus, &Parser::parse_star); }
  Formula parse_star() { return parse_left(Tok::Star, Kind::Star, &Parser::parse_unary); }

  Formula parse_unary() {
    if (cur_.kind == Tok::Not) {
      Guard g(*this);
      advance();
      return neg(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    switch (cur_.kind) {
      case Tok::Var: {
        auto v = cur_.var;
        advance();
        return Formula::var(v);
      }
      case Tok::Zero: advance(); return Formula::zero();
      case Tok::One: advance(); return Formula::one();
      case Tok::LParen: {
        advance();
        Formula f = parse_impl();
        if (cur_.kind != Tok::RParen) fail({Tok::RParen, Tok::Arrow, Tok::Or, Tok::And, Tok::OPlus, Tok::Star});
        advance();
        return f;
      }
      default:
        fail({Tok::Var, Tok::Zero, Tok::One, Tok::Not, Tok::LParen});
    }
  }

  struct Guard {
    explicit Guard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) throw ParseError(p_.cur_.offset, {}, "formula nested too deeply");
    }
    ~Guard() { --p_.depth_; }
    Parser& p_;
  };

  Lexer lex_;
  Token cur_;
  std::size_t depth_ = 0;
};

int prec(Kind k) {
  switch (k) {
    case Kind::Impl: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::OPlus: return 4;
    case Kind::Star: return 5;
    case Kind::Neg: return 6;
    default: return 7;
  }
}

class Printer {
 public:
  explicit Printer(PrintStyle style) : style_(style) {}

  const std::string& print(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    std::string out;
    Kind k = f.kind();
    switch (k) {
      case Kind::Var: out = "x" + std::to_string(f.var_index()); break;
      case Kind::Zero: out = "0"; break;
      case Kind::One: out = "1"; break;
      case Kind::Neg: {
        Formula a = f.operand();
        out = sym(k) + wrap(a, prec(a.kind()) < prec(k));
        break;
      }
      default: {
        Formula l = f.lhs(), r = f.rhs();
        int p = prec(k);
        bool right_assoc = k == Kind::Impl;
        bool pl = right_assoc ? prec(l.kind()) <= p : prec(l.kind()) < p;
        bool pr = right_assoc ? prec(r.kind()) < p : prec(r.kind()) <= p;
        out = wrap(l, pl) + " " + sym(k) + " " + wrap(r, pr);
      }
    }
    return memo_.emplace(f.id(), std::move(out)).first->second;
  }

 private:
  std::string wrap(const Formula& f, bool paren) {
    const std::string& s = print(f);
    return paren ? "(" + s + ")" : s;
  }

  std::string sym(Kind k) const {
    bool u = style_ == PrintStyle::Unicode;
    switch (k) {
      case Kind::Neg: return u ? "\xC2\xAC" : "!";
      case Kind::Star: return u ? "\xE2\x8B\x86" : "*";
      case Kind::OPlus: return u ? "\xE2\x8A\x95" : "(+)";
      case Kind::And: return u ? "\xE2\x88\xA7" : "&";
      case Kind::Or: return u ? "\xE2\x88\xA8" : "|";
      case Kind::Impl: return u ? "\xE2\x86\x92" : "->";
      default: return "?";
    }
  }

  PrintStyle style_;
  std::unordered_map<const Node*, std::string> memo_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  return p.parse_all();
}

std::string print_formula(const Formula& f, PrintStyle style) {
  Printer p(style);
  return p.print(f);
}

}  // namespace mvdyn
