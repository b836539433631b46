#ifndef DINV_CONSTRUCTION_H_
#define DINV_CONSTRUCTION_H_

#include <cstdint>
#include <map>
#include <vector>

#include "dinv/chain.h"
#include "dinv/polynomial.h"
#include "dinv/rational.h"

namespace dinv {

// One derivative factor per point: entry k-1 holds the packed (a << 4) | b
// orders of point k.
using PointMonomial = std::vector<std::uint8_t>;

struct PointPolynomial {
  int n = 0;
  std::map<PointMonomial, Rational> terms;

  // f(x_1,y_1)...f(x_n,y_n) with no derivatives taken.
  static PointPolynomial unit(int n);
  void add_term(const PointMonomial& m, const Rational& c);
  bool is_zero() const { return terms.empty(); }
};

// Throws std::invalid_argument for G(p,p) ("identically zero operator") or a
// point index outside 1..n.
PointPolynomial apply_operator(const Operator& op, const PointPolynomial& poly);

// Applies every operator to the unit product and multiplies by chain.sign.
// Throws when some point in 1..n is unused.
PointPolynomial apply_chain(const OperatorChain& chain);

// Identifies all points with (x,y); each point factor becomes one symbol.
InvariantPolynomial collapse(const PointPolynomial& poly);

// collapse(apply_chain(chain)).
InvariantPolynomial chain_polynomial(const OperatorChain& chain);

// Every canonical chain with n <= max_degree points, per-point usage <=
// max_order and all points used. Sorted by (n, ops). Zero-polynomial chains
// are included.
std::vector<OperatorChain> enumerate_chains(int max_order, int max_degree, int threads = 0);

}  // namespace dinv

#endif  // DINV_CONSTRUCTION_H_
