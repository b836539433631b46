#ifndef DINV_RATIONAL_H_
#define DINV_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dinv {

// Exact arbitrary-precision rational. All symbolic coefficients use this type.
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, long exponent);

// n/d in lowest terms. Throws std::invalid_argument when d == 0.
Rational make_rational(long n, long d = 1);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace dinv

#endif  // DINV_RATIONAL_H_
