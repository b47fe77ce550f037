#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mvdyn {

enum class Kind : std::uint8_t { Var, Zero, One, Star, Impl, Neg, And, Or, OPlus };

bool is_sugar(Kind k);
bool is_binary(Kind k);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Immutable formula DAG. Sugar nodes (Neg, And, Or, OPlus) are kept for printing
// and compared modulo desugaring by operator==.
class Formula {
 public:
  Formula();  // the constant 0

  static Formula var(std::size_t index);
  static Formula zero();
  static Formula one();
  static Formula constant(bool value) { return value ? one() : zero(); }
  static Formula make(Kind kind, const Formula& l, const Formula& r);
  static Formula make(Kind kind, const Formula& a);

  Kind kind() const;
  std::size_t var_index() const;
  Formula lhs() const;  // left child, or the only child of Neg
  Formula rhs() const;
  Formula operand() const { return lhs(); }

  // Sugar expanded one head level (Neg a -> a -> 0, ...); identity on core nodes.
  Formula expand_head() const;
  // Full desugaring; the result may be large.
  Formula desugar() const;

  // One past the largest variable index (0 for closed formulas).
  std::size_t arity() const;
  std::vector<std::size_t> variables() const;
  std::size_t dag_size() const;

  const Node* id() const { return node_.get(); }
  const NodePtr& node() const { return node_; }
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  friend bool operator==(const Formula& a, const Formula& b);
  // Exact tree identity, sugar kinds included.
  bool identical(const Formula& other) const;

 private:
  NodePtr node_;
};

struct Node {
  Kind kind;
  std::size_t index = 0;  // variable index for Var
  std::size_t arity = 0;
  NodePtr l, r;
  NodePtr expansion;  // one-step desugaring for sugar kinds
};

Formula star(const Formula& a, const Formula& b);
Formula impl(const Formula& a, const Formula& b);
Formula neg(const Formula& a);
Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);
Formula oplus(const Formula& a, const Formula& b);
// (a & !b) | (!a & b)
Formula sym_diff(const Formula& a, const Formula& b);
// a(+)a(+)...(+)a, k copies (0 for k = 0)
Formula oplus_power(const Formula& a, std::size_t k);
Formula star_power(const Formula& a, std::size_t k);
Formula conj_all(std::span<const Formula> fs);
Formula disj_all(std::span<const Formula> fs);

// Topologically ordered straight-line program for a formula DAG.
struct Program {
  struct Instr {
    Kind kind;
    std::uint32_t a = 0, b = 0;
    std::size_t var = 0;
  };
  std::vector<Instr> code;  // last instruction is the root
  std::size_t arity = 0;

  static Program compile(const Formula& f);
};

namespace detail {
template <class Alg, class T>
concept HasNeg = requires(const Alg& g, const T& a) { g.neg(a); };
template <class Alg, class T>
concept HasConj = requires(const Alg& g, const T& a) { g.conj(a, a); };
template <class Alg, class T>
concept HasDisj = requires(const Alg& g, const T& a) { g.disj(a, a); };
template <class Alg, class T>
concept HasOplus = requires(const Alg& g, const T& a) { g.oplus(a, a); };
}  // namespace detail

// Evaluates a program in any structure providing zero/one/star/impl; derived
// connectives use the algebra's own definitions when present, else desugar.
template <class Alg, class T>
T run_program(const Program& p, const Alg& alg, std::span<const T> vars) {
  std::vector<T> v;
  v.reserve(p.code.size());
  auto negf = [&](const T& a) {
    if constexpr (detail::HasNeg<Alg, T>) return T(alg.neg(a));
    else return T(alg.impl(a, alg.zero()));
  };
  auto conjf = [&](const T& a, const T& b) {
    if constexpr (detail::HasConj<Alg, T>) return T(alg.conj(a, b));
    else return T(alg.star(a, alg.impl(a, b)));
  };
  for (const auto& in : p.code) {
    switch (in.kind) {
      case Kind::Var: v.push_back(vars[in.var]); break;
      case Kind::Zero: v.push_back(alg.zero()); break;
      case Kind::One: v.push_back(alg.one()); break;
      case Kind::Star: v.push_back(alg.star(v[in.a], v[in.b])); break;
      case Kind::Impl: v.push_back(alg.impl(v[in.a], v[in.b])); break;
      case Kind::Neg: v.push_back(negf(v[in.a])); break;
      case Kind::And: v.push_back(conjf(v[in.a], v[in.b])); break;
      case Kind::Or:
        if constexpr (detail::HasDisj<Alg, T>) {
          v.push_back(alg.disj(v[in.a], v[in.b]));
        } else {
          const T& a = v[in.a];
          const T& b = v[in.b];
          v.push_back(conjf(alg.impl(alg.impl(a, b), b), alg.impl(alg.impl(b, a), a)));
        }
        break;
      case Kind::OPlus:
        if constexpr (detail::HasOplus<Alg, T>) v.push_back(alg.oplus(v[in.a], v[in.b]));
        else v.push_back(alg.impl(negf(v[in.a]), v[in.b]));
        break;
    }
  }
  return std::move(v.back());
}

}  // namespace mvdyn
