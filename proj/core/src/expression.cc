#include "dinv/expression.h"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace dinv {

struct Expression::Node {
  enum Kind { kConst, kVar, kAdd, kSub, kMul, kDiv, kNeg, kPow } kind;
  Rational value;
  int var = 0;
  int exponent = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr left = term();
    while (true) {
      skip();
      if (peek() == '+' || peek() == '-') {
        const auto k = peek() == '+' ? Node::kAdd : Node::kSub;
        ++pos_;
        left = make(k, left, term());
      } else {
        return left;
      }
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    while (true) {
      skip();
      if (peek() == '*' || peek() == '/') {
        const auto k = peek() == '*' ? Node::kMul : Node::kDiv;
        ++pos_;
        left = make(k, left, unary());
      } else {
        return left;
      }
    }
  }

  NodePtr unary() {
    skip();
    if (peek() == '-') {
      ++pos_;
      return make(Node::kNeg, unary());
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    skip();
    if (peek() == '^') {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Node::kPow;
      n->a = base;
      n->exponent = integer();
      return n;
    }
    return base;
  }

  NodePtr atom() {
    skip();
    if (peek() == '(') {
      ++pos_;
      NodePtr e = expr();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (s_.substr(pos_, 2) == "DI") {
      pos_ += 2;
      auto n = std::make_shared<Node>();
      n->kind = Node::kVar;
      n->var = integer();
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      auto n = std::make_shared<Node>();
      n->kind = Node::kConst;
      n->value = integer();
      return n;
    }
    fail("expected number, DI<n> or '('");
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) fail("expected integer");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(pos_) + ": " + what +
                                " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void collect(const Node* n, std::set<int>& out) {
  if (!n) return;
  if (n->kind == Node::kVar) out.insert(n->var);
  collect(n->a.get(), out);
  collect(n->b.get(), out);
}

InvariantPolynomial eval(const Node* n, const std::map<int, InvariantPolynomial>& bind) {
  switch (n->kind) {
    case Node::kConst:
      return InvariantPolynomial(n->value);
    case Node::kVar: {
      auto it = bind.find(n->var);
      if (it == bind.end()) throw std::invalid_argument("unbound variable DI" + std::to_string(n->var));
      return it->second;
    }
    case Node::kAdd:
      return eval(n->a.get(), bind) + eval(n->b.get(), bind);
    case Node::kSub:
      return eval(n->a.get(), bind) - eval(n->b.get(), bind);
    case Node::kMul:
      return eval(n->a.get(), bind) * eval(n->b.get(), bind);
    case Node::kDiv: {
      const auto d = eval(n->b.get(), bind);
      if (d.is_zero() || d.size() != 1 || !d.terms().begin()->first.empty())
        throw std::invalid_argument("division by a non-constant or zero");
      return eval(n->a.get(), bind) * (Rational(1) / d.terms().begin()->second);
    }
    case Node::kNeg:
      return -eval(n->a.get(), bind);
    case Node::kPow:
      return pow(eval(n->a.get(), bind), n->exponent);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = ExprParser(text).parse();
  e.text_ = std::string(text);
  return e;
}

std::set<int> Expression::variables() const {
  std::set<int> out;
  collect(root_.get(), out);
  return out;
}

InvariantPolynomial Expression::substitute(const std::map<int, InvariantPolynomial>& bindings) const {
  if (!root_) return {};
  return eval(root_.get(), bindings);
}

}  // namespace dinv
