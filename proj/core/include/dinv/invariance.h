#ifndef DINV_INVARIANCE_H_
#define DINV_INVARIANCE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dinv/chain.h"
#include "dinv/jet.h"
#include "dinv/polynomial.h"
#include "dinv/random.h"
#include "dinv/rational.h"

namespace dinv {

enum class MapKind { kEuclidean, kSimilarity, kAffine };

std::string to_string(MapKind k);

// u = M x with M = [[a, b], [c, d]]. Translations do not affect jets.
struct LinearMap2 {
  Rational a, b, c, d;
  MapKind kind = MapKind::kAffine;

  // Throws std::invalid_argument when singular or when the tag does not fit
  // the entries.
  LinearMap2(Rational a, Rational b, Rational c, Rational d, MapKind kind = MapKind::kAffine);

  static LinearMap2 identity();
  // [[cos, sin], [-sin, cos]]; requires cos^2 + sin^2 = 1. With this
  // orientation h_u = cos f_x + sin f_y.
  static LinearMap2 rotation(const Rational& cos, const Rational& sin);
  static LinearMap2 similarity(const Rational& scale, const Rational& cos, const Rational& sin);
  static LinearMap2 affine(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

  Rational det() const { return a * d - b * c; }
  LinearMap2 inverse() const;
  // (*this) o other
  LinearMap2 compose(const LinearMap2& other) const;
  std::string to_string() const;
};

// Derivatives of h(u) = f(M^-1 u) in terms of those of f. Order-m output
// entries depend only on order-m inputs.
RationalJet jet_transform(const RationalJet& jet, const LinearMap2& m);
Jet jet_transform(const Jet& jet, const LinearMap2& m);
// Same law with the inverse matrix given directly in row-major order.
Jet jet_transform_inverse(const Jet& jet, const std::array<double, 4>& inverse);

// Predicted DI(h)/DI(f) for a chain with P F's and Q G's: 1 (euclidean),
// (a^2+b^2)^-(P+Q) (similarity), det^-Q (affine with P = 0). nullopt means
// no invariance is claimed for this group.
std::optional<Rational> chain_weight(const OperatorChain& chain, const LinearMap2& m);

// DI(jet') - w DI(jet). nullopt when chain_weight makes no claim.
std::optional<Rational> check_invariance(const InvariantPolynomial& inv, const OperatorChain& chain,
                                         const LinearMap2& m, const RationalJet& jet);
std::optional<double> check_invariance(const InvariantPolynomial& inv, const OperatorChain& chain,
                                       const LinearMap2& m, const Jet& jet);

// Seeded generators. Jet entries are n/d with n in [-24, 24], d in {1,2,4,8}.
RationalJet random_rational_jet(Rng& rng, int max_order = kMaxJetOrder);
// (cos, sin) from a Pythagorean triple, random quadrant.
LinearMap2 random_pythagorean_rotation(Rng& rng);
LinearMap2 random_similarity(Rng& rng);
LinearMap2 random_affine(Rng& rng);

struct InvarianceRecord {
  std::string name;
  std::string chain;
  MapKind group;
  int trials = 0;
  Rational max_residual;  // largest |residual|
  std::string status;     // "exact", "fail" or "no-claim"

  nlohmann::json to_json() const;
};

// Draws `trials` random maps of the group, each with a fresh random jet.
InvarianceRecord invariance_trials(const std::string& name, const OperatorChain& chain,
                                   const InvariantPolynomial& inv, MapKind group, int trials,
                                   std::uint64_t seed);

}  // namespace dinv

#endif  // DINV_INVARIANCE_H_
