#ifndef DINV_POLYNOMIAL_H_
#define DINV_POLYNOMIAL_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dinv/jet.h"
#include "dinv/rational.h"

namespace dinv {

// f_ij = d^{i+j} f / dx^i dy^j. Packed as (i << 4) | j so that codes sort
// by x-order first.
struct DerivSymbol {
  int i = 0;
  int j = 0;

  std::uint8_t code() const { return static_cast<std::uint8_t>((i << 4) | j); }
  int order() const { return i + j; }
  static DerivSymbol from_code(std::uint8_t c) { return {c >> 4, c & 15}; }
  std::string name() const;  // "f{ij}"

  friend bool operator==(const DerivSymbol&, const DerivSymbol&) = default;
  friend auto operator<=>(const DerivSymbol&, const DerivSymbol&) = default;
};

// All symbols with 1 <= i+j <= max_order, ordered by total order, then by
// descending x-order: f10 f01 f20 f11 f02 ...
std::vector<DerivSymbol> derivative_symbols(int max_order);

// Multiset of symbol codes, kept sorted.
using Monomial = std::vector<std::uint8_t>;

std::string monomial_to_string(const Monomial& m);

class InvariantPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  InvariantPolynomial() = default;
  explicit InvariantPolynomial(const Rational& constant);
  static InvariantPolynomial symbol(DerivSymbol s);

  // Adds c * m; m need not be sorted. Drops the term if it cancels.
  void add_term(Monomial m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Common degree of all monomials, or -1 if inhomogeneous or zero.
  int degree() const;
  // Largest i+j over all symbols.
  int max_order() const;
  // Sum of i+j over each monomial when all agree, else -1.
  int weight() const;

  InvariantPolynomial& operator+=(const InvariantPolynomial& o);
  InvariantPolynomial& operator-=(const InvariantPolynomial& o);
  InvariantPolynomial& operator*=(const Rational& s);
  friend InvariantPolynomial operator+(InvariantPolynomial a, const InvariantPolynomial& b) { return a += b; }
  friend InvariantPolynomial operator-(InvariantPolynomial a, const InvariantPolynomial& b) { return a -= b; }
  friend InvariantPolynomial operator*(InvariantPolynomial a, const Rational& s) { return a *= s; }
  friend InvariantPolynomial operator*(const Rational& s, InvariantPolynomial a) { return a *= s; }
  friend InvariantPolynomial operator*(const InvariantPolynomial& a, const InvariantPolynomial& b);
  InvariantPolynomial operator-() const { return *this * Rational(-1); }
  friend bool operator==(const InvariantPolynomial& a, const InvariantPolynomial& b) { return a.terms_ == b.terms_; }

  // Partial derivative with respect to one symbol.
  InvariantPolynomial differentiate(DerivSymbol s) const;

  // Throws std::invalid_argument when the jet lacks a symbol.
  Rational eval(const RationalJet& jet) const;
  double eval(const Jet& jet) const;

  // "2*f{02}*f{20} - 2*f{11}^2"; "0" for the zero polynomial.
  std::string to_text() const;
  nlohmann::json to_json() const;
  static InvariantPolynomial from_json(const nlohmann::json& j);

 private:
  TermMap terms_;
};

InvariantPolynomial pow(const InvariantPolynomial& p, int e);

// If a == s * b for some nonzero rational s, returns s.
std::pair<bool, Rational> proportional(const InvariantPolynomial& a, const InvariantPolynomial& b);

// Parses the text form. Accepts implicit multiplication between factors
// ("2f{02}f{20}"), "^e" powers, rational coefficients and +/- between terms.
InvariantPolynomial parse_polynomial(std::string_view text);

// Double-precision evaluation plan for the per-pixel hot path.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const InvariantPolynomial& p);
  double operator()(const Jet& jet) const;

 private:
  struct Term {
    double coeff;
    std::vector<int> slots;  // jet storage indices, repeated for powers
  };
  std::vector<Term> terms_;
};

}  // namespace dinv

#endif  // DINV_POLYNOMIAL_H_
