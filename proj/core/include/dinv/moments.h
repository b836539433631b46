#ifndef DINV_MOMENTS_H_
#define DINV_MOMENTS_H_

#include <vector>

#include "dinv/chain.h"
#include "dinv/invariance.h"
#include "dinv/jet.h"
#include "dinv/polynomial.h"
#include "dinv/random.h"

namespace dinv {

struct WeightedPoint {
  Rational x, y, w;
};

using PointCloud = std::vector<WeightedPoint>;

// eta_ij = sum w (x - xc)^i (y - yc)^j for 1 <= i+j <= max_order, with the
// weighted centroid (xc, yc). Throws std::invalid_argument when the total
// weight is zero.
RationalJet central_moments(const PointCloud& cloud, int max_order = kMaxJetOrder);

// Moves every point to M p; weights are unchanged.
PointCloud transform_cloud(const PointCloud& cloud, const LinearMap2& m);

// GMI(M cloud) - det(M)^Q GMI(cloud), where GMI substitutes eta_ij for f_ij
// in the invariant of a G-only chain. Central moments follow the same tensor
// law as derivatives, so the residual is exactly zero.
Rational moment_isomorphism_check(const OperatorChain& chain, const InvariantPolynomial& inv, const PointCloud& cloud,
                                  const LinearMap2& m);
Rational moment_isomorphism_check(const OperatorChain& chain, const PointCloud& cloud, const LinearMap2& m);

// n points with small rational coordinates and positive weights.
PointCloud random_rational_cloud(Rng& rng, int n);

}  // namespace dinv

#endif  // DINV_MOMENTS_H_
