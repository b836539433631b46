#ifndef DINV_CHAIN_H_
#define DINV_CHAIN_H_

#include <string>
#include <string_view>
#include <vector>

namespace dinv {

enum class OpKind { F, G };

// F(p,q) = dx_p dx_q + dy_p dy_q, G(p,q) = dx_p dy_q - dy_p dx_q.
// Point indices are 1-based.
struct Operator {
  OpKind kind = OpKind::F;
  int p = 1;
  int q = 1;

  friend bool operator==(const Operator&, const Operator&) = default;
  friend auto operator<=>(const Operator&, const Operator&) = default;
};

std::string to_string(const Operator& op);

// A multiset of operators acting on f(x_1,y_1)...f(x_n,y_n). sign multiplies
// the generated polynomial; canonicalization flips it for reordered G's.
struct OperatorChain {
  std::vector<Operator> ops;
  int n = 0;
  int sign = 1;

  int degree() const { return n; }
  // Largest per-point usage; F(p,p) counts twice for p.
  int order() const;
  std::vector<int> usage() const;
  int f_count() const;
  int g_count() const;
  bool covers_all_points() const;

  friend bool operator==(const OperatorChain&, const OperatorChain&) = default;
};

// Grammar: chain := term ("." term)* ; term := ("F"|"G") "(" int "," int ")" ["^" int].
// n is taken as the largest point index. Throws std::invalid_argument.
OperatorChain parse_chain(std::string_view text);

// Inverse of parse_chain; repeated operators are folded into "^k". A negative
// sign is not representable in the grammar and is written as a leading "-".
std::string to_string(const OperatorChain& chain);

// Sorted operators, G indices ordered p<q, points relabeled 1..k. Chains that
// differ only by point relabeling map to the same form. For n <= 8 the form is
// the lexicographic minimum over all relabelings; above that, labels follow
// first occurrence in the sorted list.
OperatorChain canonical_chain(const OperatorChain& chain);

}  // namespace dinv

#endif  // DINV_CHAIN_H_
