#include "mvdyn/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "mvdyn/errors.hpp"

namespace mvdyn {

bool is_sugar(Kind k) { return k == Kind::Neg || k == Kind::And || k == Kind::Or || k == Kind::OPlus; }
bool is_binary(Kind k) { return k != Kind::Var && k != Kind::Zero && k != Kind::One && k != Kind::Neg; }

namespace {

NodePtr leaf(Kind k, std::size_t index = 0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->index = index;
  n->arity = k == Kind::Var ? index + 1 : 0;
  return n;
}

const NodePtr& zero_node() {
  static const NodePtr z = leaf(Kind::Zero);
  return z;
}

const NodePtr& one_node() {
  static const NodePtr o = leaf(Kind::One);
  return o;
}

NodePtr build(Kind k, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->arity = std::max(l->arity, r ? r->arity : 0);
  switch (k) {
    case Kind::Neg:
      n->expansion = build(Kind::Impl, l, zero_node());
      break;
    case Kind::And:
      n->expansion = build(Kind::Star, l, build(Kind::Impl, l, r));
      break;
    case Kind::Or: {
      auto p = build(Kind::Impl, build(Kind::Impl, l, r), r);
      auto q = build(Kind::Impl, build(Kind::Impl, r, l), l);
      n->expansion = build(Kind::And, p, q);
      break;
    }
    case Kind::OPlus:
      n->expansion = build(Kind::Impl, build(Kind::Neg, l, nullptr), r);
      break;
    default:
      break;
  }
  n->l = std::move(l);
  n->r = std::move(r);
  return n;
}

struct PairHash {
  std::size_t operator()(const std::pair<const Node*, const Node*>& p) const {
    return std::hash<const void*>()(p.first) * 31 ^ std::hash<const void*>()(p.second);
  }
};

class Equiv {
 public:
  bool eq(const Node* a, const Node* b) {
    if (a == b) return true;
    if (seen_.count({a, b})) return true;
    bool res;
    if (a->kind == b->kind) {
      switch (a->kind) {
        case Kind::Var: res = a->index == b->index; break;
        case Kind::Zero:
        case Kind::One: res = true; break;
        case Kind::Neg: res = eq(a->l.get(), b->l.get()); break;
        default: res = eq(a->l.get(), b->l.get()) && eq(a->r.get(), b->r.get()); break;
      }
    } else if (is_sugar(a->kind) && (!is_sugar(b->kind) || a->kind > b->kind)) {
      res = eq(a->expansion.get(), b);
    } else if (is_sugar(b->kind)) {
      res = eq(a, b->expansion.get());
    } else {
      res = false;
    }
    if (res) seen_.insert({a, b});
    return res;
  }

 private:
  std::unordered_set<std::pair<const Node*, const Node*>, PairHash> seen_;
};

bool identical_rec(const Node* a, const Node* b,
                   std::unordered_set<std::pair<const Node*, const Node*>, PairHash>& seen) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  if (seen.count({a, b})) return true;
  bool res;
  switch (a->kind) {
    case Kind::Var: res = a->index == b->index; break;
    case Kind::Zero:
    case Kind::One: res = true; break;
    case Kind::Neg: res = identical_rec(a->l.get(), b->l.get(), seen); break;
    default:
      res = identical_rec(a->l.get(), b->l.get(), seen) && identical_rec(a->r.get(), b->r.get(), seen);
  }
  if (res) seen.insert({a, b});
  return res;
}

template <class F>
void visit_dag(const Node* root, F&& f) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{root};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    f(n);
    if (n->l) stack.push_back(n->l.get());
    if (n->r) stack.push_back(n->r.get());
  }
}

}  // namespace

Formula::Formula() : node_(zero_node()) {}

Formula Formula::var(std::size_t index) { return Formula(leaf(Kind::Var, index)); }
Formula Formula::zero() { return Formula(zero_node()); }
Formula Formula::one() { return Formula(one_node()); }

Formula Formula::make(Kind kind, const Formula& l, const Formula& r) {
  if (!is_binary(kind)) throw DomainError("connective is not binary");
  return Formula(build(kind, l.node_, r.node_));
}

Formula Formula::make(Kind kind, const Formula& a) {
  if (kind != Kind::Neg) throw DomainError("connective is not unary");
  return Formula(build(kind, a.node_, nullptr));
}

Kind Formula::kind() const { return node_->kind; }

std::size_t Formula::var_index() const {
  if (node_->kind != Kind::Var) throw DomainError("not a variable");
  return node_->index;
}

Formula Formula::lhs() const {
  if (!node_->l) throw DomainError("formula has no children");
  return Formula(node_->l);
}

Formula Formula::rhs() const {
  if (!node_->r) throw DomainError("formula has no right child");
  return Formula(node_->r);
}

Formula Formula::expand_head() const { return node_->expansion ? Formula(node_->expansion) : *this; }

Formula Formula::desugar() const {
  std::unordered_map<const Node*, NodePtr> memo;
  std::function<NodePtr(const NodePtr&)> go = [&](const NodePtr& n) -> NodePtr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    NodePtr out;
    if (n->expansion) {
      out = go(n->expansion);
    } else if (n->l) {
      auto l = go(n->l);
      auto r = go(n->r);
      out = (l == n->l && r == n->r) ? n : build(n->kind, l, r);
    } else {
      out = n;
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return Formula(go(node_));
}

std::size_t Formula::arity() const { return node_->arity; }

std::vector<std::size_t> Formula::variables() const {
  std::vector<std::size_t> out;
  visit_dag(node_.get(), [&](const Node* n) {
    if (n->kind == Kind::Var) out.push_back(n->index);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t Formula::dag_size() const {
  std::size_t c = 0;
  visit_dag(node_.get(), [&](const Node*) { ++c; });
  return c;
}

bool operator==(const Formula& a, const Formula& b) {
  Equiv e;
  return e.eq(a.node_.get(), b.node_.get());
}

bool Formula::identical(const Formula& other) const {
  std::unordered_set<std::pair<const Node*, const Node*>, PairHash> seen;
  return identical_rec(node_.get(), other.node_.get(), seen);
}

Formula star(const Formula& a, const Formula& b) { return Formula::make(Kind::Star, a, b); }
Formula impl(const Formula& a, const Formula& b) { return Formula::make(Kind::Impl, a, b); }
Formula neg(const Formula& a) { return Formula::make(Kind::Neg, a); }
Formula conj(const Formula& a, const Formula& b) { return Formula::make(Kind::And, a, b); }
Formula disj(const Formula& a, const Formula& b) { return Formula::make(Kind::Or, a, b); }
Formula oplus(const Formula& a, const Formula& b) { return Formula::make(Kind::OPlus, a, b); }

Formula sym_diff(const Formula& a, const Formula& b) {
  return disj(conj(a, neg(b)), conj(neg(a), b));
}

Formula oplus_power(const Formula& a, std::size_t k) {
  if (k == 0) return Formula::zero();
  Formula out = a;
  for (std::size_t i = 1; i < k; ++i) out = oplus(out, a);
  return out;
}

Formula star_power(const Formula& a, std::size_t k) {
  if (k == 0) return Formula::one();
  Formula out = a;
  for (std::size_t i = 1; i < k; ++i) out = star(out, a);
  return out;
}

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::one();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

Formula disj_all(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::zero();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = disj(out, fs[i]);
  return out;
}

Program Program::compile(const Formula& f) {
  Program p;
  p.arity = f.arity();
  std::unordered_map<const Node*, std::uint32_t> slot;
  // iterative post-order
  std::vector<std::pair<const Node*, bool>> stack{{f.id(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (slot.count(n)) continue;
    if (!expanded) {
      stack.push_back({n, true});
      if (n->r && !slot.count(n->r.get())) stack.push_back({n->r.get(), false});
      if (n->l && !slot.count(n->l.get())) stack.push_back({n->l.get(), false});
      continue;
    }
    Instr in{n->kind};
    if (n->kind == Kind::Var) in.var = n->index;
    if (n->l) in.a = slot.at(n->l.get());
    if (n->r) in.b = slot.at(n->r.get());
    slot.emplace(n, static_cast<std::uint32_t>(p.code.size()));
    p.code.push_back(in);
  }
  return p;
}

}  // namespace mvdyn
