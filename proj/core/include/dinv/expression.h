#ifndef DINV_EXPRESSION_H_
#define DINV_EXPRESSION_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "dinv/polynomial.h"
#include "dinv/rational.h"

namespace dinv {

// Polynomial expression over variables DI<n>:
//   expr := term (("+"|"-") term)*
//   term := unary (("*"|"/") unary)*      division only by constants
//   unary := ("-"|"+") unary | power
//   power := atom ("^" int)?
//   atom := int | "DI" int | "(" expr ")"
class Expression {
 public:
  struct Node;

  static Expression parse(std::string_view text);

  std::set<int> variables() const;
  const std::string& text() const { return text_; }

  // Expands with each DI<n> replaced by bindings[n]. Throws
  // std::invalid_argument for an unbound variable.
  InvariantPolynomial substitute(const std::map<int, InvariantPolynomial>& bindings) const;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

inline InvariantPolynomial poly_substitute(const Expression& expr,
                                           const std::map<int, InvariantPolynomial>& bindings) {
  return expr.substitute(bindings);
}

}  // namespace dinv

#endif  // DINV_EXPRESSION_H_
