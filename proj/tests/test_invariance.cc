#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "dinv/catalog.h"
#include "dinv/construction.h"
#include "dinv/invariance.h"
#include "dinv/random.h"

using namespace dinv;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

}  // namespace

TEST(LinearMap, Validation) {
  EXPECT_THROW(LinearMap2::affine(q(1), q(2), q(2), q(4)), std::invalid_argument);
  EXPECT_THROW(LinearMap2::rotation(q(1), q(1)), std::invalid_argument);
  EXPECT_THROW(LinearMap2(q(2), q(0), q(0), q(3), MapKind::kSimilarity), std::invalid_argument);
  EXPECT_NO_THROW(LinearMap2::rotation(q(3, 5), q(4, 5)));
  const auto m = LinearMap2::affine(q(2), q(1), q(-1), q(3));
  EXPECT_EQ(m.det(), q(7));
  const auto id = m.compose(m.inverse());
  EXPECT_EQ(id.a, q(1));
  EXPECT_EQ(id.b, q(0));
  EXPECT_EQ(id.c, q(0));
  EXPECT_EQ(id.d, q(1));
}

TEST(JetTransform, RotationConvention) {
  // h(u) = f(M^-1 u) with M = [[c, s], [-s, c]]: h_u = c f_x + s f_y.
  RationalJet j(1);
  j(1, 0) = q(2);
  j(0, 1) = q(7);
  const auto h = jet_transform(j, LinearMap2::rotation(q(3, 5), q(4, 5)));
  EXPECT_EQ(h(1, 0), q(3, 5) * 2 + q(4, 5) * 7);
  EXPECT_EQ(h(0, 1), -q(4, 5) * 2 + q(3, 5) * 7);
}

TEST(JetTransformProperty, IdentityAndComposition) {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const auto j = random_rational_jet(rng);
    EXPECT_EQ(jet_transform(j, LinearMap2::identity()), j);
    const auto a = random_affine(rng);
    const auto b = random_affine(rng);
    // h = f o A^-1, then k = h o B^-1 = f o (B A)^-1
    EXPECT_EQ(jet_transform(jet_transform(j, a), b), jet_transform(j, b.compose(a)));
  }
}

TEST(JetTransformProperty, DoubleMatchesRational) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto j = random_rational_jet(rng);
    const auto m = random_affine(rng);
    Jet d;
    for (const auto& s : derivative_symbols(4)) d(s.i, s.j) = to_double(j(s.i, s.j));
    const auto exact = jet_transform(j, m);
    const auto approx = jet_transform(d, m);
    for (const auto& s : derivative_symbols(4))
      EXPECT_NEAR(approx(s.i, s.j), to_double(exact(s.i, s.j)), 1e-9 * (1 + std::fabs(to_double(exact(s.i, s.j)))));
  }
}

TEST(ChainWeight, Predictions) {
  const auto f2 = parse_chain("F(1,2)^2");
  const auto g2 = parse_chain("G(1,2)^2");
  EXPECT_EQ(*chain_weight(f2, LinearMap2::rotation(q(3, 5), q(4, 5))), q(1));
  const auto s = LinearMap2::similarity(q(2), q(3, 5), q(4, 5));
  EXPECT_EQ(*chain_weight(f2, s), q(1, 16));
  const auto a = LinearMap2::affine(q(2), q(1), q(0), q(3));
  EXPECT_EQ(*chain_weight(g2, a), q(1, 36));
  EXPECT_FALSE(chain_weight(f2, a).has_value());
}

TEST(InvarianceProperty, RandomChainsExact) {
  // Every constructed chain is an absolute rotation invariant and carries the
  // predicted similarity weight.
  Rng rng(99);
  const auto chains = enumerate_chains(3, 3, 0);
  for (std::size_t k = 0; k < chains.size(); k += 7) {
    const auto& c = chains[k];
    const auto p = chain_polynomial(c);
    for (int t = 0; t < 3; ++t) {
      const auto jet = random_rational_jet(rng);
      EXPECT_EQ(*check_invariance(p, c, random_pythagorean_rotation(rng), jet), 0) << to_string(c);
      EXPECT_EQ(*check_invariance(p, c, random_similarity(rng), jet), 0) << to_string(c);
      if (c.f_count() == 0) EXPECT_EQ(*check_invariance(p, c, random_affine(rng), jet), 0) << to_string(c);
    }
  }
}

TEST(InvarianceProperty, NonInvariantDetected) {
  // f10 alone is not rotation invariant; pairing it with F(1,2)'s weight must fail.
  Rng rng(2);
  const auto c = parse_chain("F(1,2)");
  const auto p = parse_polynomial("f{10}^2");
  bool caught = false;
  for (int t = 0; t < 10 && !caught; ++t)
    caught = *check_invariance(p, c, random_pythagorean_rotation(rng), random_rational_jet(rng)) != 0;
  EXPECT_TRUE(caught);
}

TEST(InvarianceTrials, Statuses) {
  const auto& cat = default_catalog();
  const auto& e = cat.entry(3);
  EXPECT_EQ(invariance_trials("3", e.chain, e.polynomial, MapKind::kEuclidean, 5, 1).status, "exact");
  const auto& f = cat.entry(1);
  const auto r = invariance_trials("1", f.chain, f.polynomial, MapKind::kAffine, 5, 1);
  EXPECT_EQ(r.status, f.P > 0 ? "no-claim" : "exact");
}

TEST(RandomMaps, KindsAndRanges) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto r = random_pythagorean_rotation(rng);
    EXPECT_EQ(r.a * r.a + r.b * r.b, 1);
    EXPECT_EQ(r.kind, MapKind::kEuclidean);
    const auto s = random_similarity(rng);
    EXPECT_EQ(s.a, s.d);
    EXPECT_EQ(s.b, -s.c);
    EXPECT_NE(random_affine(rng).det(), 0);
  }
}
