#include <gtest/gtest.h>

#include <stdexcept>

#include "dinv/catalog.h"
#include "dinv/construction.h"
#include "dinv/invariance.h"
#include "dinv/moments.h"
#include "dinv/random.h"

using namespace dinv;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

PointCloud square_cloud() {
  // unit weights at (0,0), (2,0), (0,1), (3,3)
  return {{q(0), q(0), q(1)}, {q(2), q(0), q(1)}, {q(0), q(1), q(1)}, {q(3), q(3), q(1)}};
}

}  // namespace

TEST(CentralMoments, HandComputed) {
  const auto eta = central_moments(square_cloud(), 2);
  // centroid (5/4, 1); dx = -5/4, 3/4, -5/4, 7/4; dy = -1, -1, 0, 2
  EXPECT_EQ(eta(1, 0), q(0));
  EXPECT_EQ(eta(0, 1), q(0));
  EXPECT_EQ(eta(2, 0), q(25 + 9 + 25 + 49, 16));
  EXPECT_EQ(eta(0, 2), q(6));
  EXPECT_EQ(eta(1, 1), q(5, 4) - q(3, 4) + q(7, 2));
  EXPECT_THROW(central_moments({{q(1), q(1), q(0)}}), std::invalid_argument);
}

TEST(MomentIsomorphism, HandScaledCase) {
  // G(1,2)^2 on moments is 2 eta20 eta02 - 2 eta11^2; x -> 2x scales it by 4 = det^2.
  const auto chain = parse_chain("G(1,2)^2");
  const auto cloud = square_cloud();
  const auto m = LinearMap2::affine(q(2), q(0), q(0), q(1));
  const auto before = central_moments(cloud, 2), after = central_moments(transform_cloud(cloud, m), 2);
  auto form = [](const RationalJet& e) -> Rational { return e(2, 0) * e(0, 2) * 2 - e(1, 1) * e(1, 1) * 2; };
  EXPECT_EQ(form(after), form(before) * 4);
  EXPECT_EQ(moment_isomorphism_check(chain, cloud, m), 0);
}

TEST(MomentIsomorphism, IdentityAndCollinear) {
  Rng rng(3);
  const auto chain = parse_chain("G(1,2)^2");
  EXPECT_EQ(moment_isomorphism_check(chain, random_rational_cloud(rng, 6), LinearMap2::identity()), 0);
  // all points on a line: the determinant form vanishes on both sides
  PointCloud line;
  for (int k = 0; k < 5; ++k) line.push_back({q(k), q(2 * k), q(k + 1)});
  const auto eta = central_moments(line, 2);
  EXPECT_EQ(eta(2, 0) * eta(0, 2) - eta(1, 1) * eta(1, 1), 0);
  EXPECT_EQ(moment_isomorphism_check(chain, line, random_affine(rng)), 0);
}

TEST(MomentIsomorphism, Rejections) {
  Rng rng(1);
  EXPECT_THROW(moment_isomorphism_check(parse_chain("F(1,2)"), random_rational_cloud(rng, 4), LinearMap2::identity()),
               std::invalid_argument);
  EXPECT_THROW(moment_isomorphism_check(parse_chain("G(1,2)^2"), PointCloud{}, LinearMap2::identity()),
               std::invalid_argument);
  EXPECT_THROW(random_rational_cloud(rng, 0), std::invalid_argument);
}

TEST(MomentIsomorphismProperty, AllAffineCatalogEntries) {
  const auto& cat = default_catalog();
  Rng rng(44);
  int checked = 0;
  for (const auto& e : cat.entries()) {
    if (e.P != 0) continue;
    for (int t = 0; t < 2; ++t) {
      const auto cloud = random_rational_cloud(rng, 7);
      EXPECT_EQ(moment_isomorphism_check(e.chain, e.polynomial, cloud, random_affine(rng)), 0) << e.id;
    }
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(MomentIsomorphismProperty, NonInvariantFormDetected) {
  // eta20 alone is not an affine relative invariant.
  Rng rng(6);
  const auto chain = parse_chain("G(1,2)^2");
  const auto bad = parse_polynomial("f{20}^2");
  bool caught = false;
  for (int t = 0; t < 10 && !caught; ++t)
    caught = moment_isomorphism_check(chain, bad, random_rational_cloud(rng, 5), random_affine(rng)) != 0;
  EXPECT_TRUE(caught);
}
