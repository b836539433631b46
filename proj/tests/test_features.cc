#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "dinv/catalog.h"
#include "dinv/features.h"
#include "dinv/random.h"

using namespace dinv;

namespace {

Jet random_jet(Rng& rng) {
  Jet j;
  for (const auto& d : derivative_symbols(4)) j(d.i, d.j) = rng.uniform(-2, 2);
  return j;
}

// Principal curvatures of the graph z = f(x, y) from the shape operator
// I^-1 II, computed independently of the invariant formulation.
std::pair<double, double> principal_curvatures(const Jet& j) {
  const double fx = j(1, 0), fy = j(0, 1);
  const double E = 1 + fx * fx, F = fx * fy, G = 1 + fy * fy;
  const double n = std::sqrt(1 + fx * fx + fy * fy);
  const double L = j(2, 0) / n, M = j(1, 1) / n, N = j(0, 2) / n;
  const double det = E * G - F * F;
  // S = I^-1 II
  const double s11 = (G * L - F * M) / det, s12 = (G * M - F * N) / det;
  const double s21 = (E * M - F * L) / det, s22 = (E * N - F * M) / det;
  const double tr = s11 + s22, dt = s11 * s22 - s12 * s21;
  const double r = std::sqrt(std::max(0.0, tr * tr / 4 - dt));
  return {tr / 2 + r, tr / 2 - r};
}

}  // namespace

TEST(Features, IsotropicBowl) {
  Jet j;
  j(2, 0) = 1;
  j(0, 2) = 1;
  const auto f = derived_features(j);
  EXPECT_DOUBLE_EQ(f.lambda1, 1);
  EXPECT_DOUBLE_EQ(f.lambda2, 1);
  EXPECT_DOUBLE_EQ(f.gaussian_curvature, 1);
  EXPECT_DOUBLE_EQ(f.mean_curvature, 1);
  ASSERT_TRUE(f.shape_index.has_value());
  EXPECT_DOUBLE_EQ(*f.shape_index, -1);
  EXPECT_DOUBLE_EQ(f.curvedness, 1);
}

TEST(Features, FlatJetHasUndefinedShapeIndex) {
  const auto f = derived_features(Jet());
  EXPECT_FALSE(f.shape_index.has_value());
  EXPECT_EQ(f.curvedness, 0);
  EXPECT_EQ(f.to_json()["shape_index"], "undefined");
  EXPECT_THROW(derived_features(Jet(1)), std::invalid_argument);
}

TEST(Features, ClassicValuesMatchCatalog) {
  const auto& cat = default_catalog();
  Rng rng(8);
  const auto classic = classic_invariants(cat);
  for (int t = 0; t < 20; ++t) {
    const Jet j = random_jet(rng);
    const auto c = classic_values(j);
    EXPECT_NEAR(c.laplacian, cat.entry(1).polynomial.eval(j), 1e-12);
    EXPECT_NEAR(c.gradient_sq, cat.entry(2).polynomial.eval(j), 1e-12);
    EXPECT_NEAR(2 * c.hessian_det, cat.entry(3).polynomial.eval(j), 1e-12);
  }
}

TEST(FeaturesProperty, EigenvalueIdentities) {
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const Jet j = random_jet(rng);
    const auto f = derived_features(j);
    const auto c = classic_values(j);
    EXPECT_NEAR(f.lambda1 + f.lambda2, c.laplacian, 1e-10);
    EXPECT_NEAR(f.lambda1 * f.lambda2, c.hessian_det, 1e-10);
    EXPECT_GE(f.lambda1, f.lambda2);
    // the Hessian in matrix form
    const double a = j(2, 0), b = j(1, 1), d = j(0, 2);
    for (double l : {f.lambda1, f.lambda2}) EXPECT_NEAR((a - l) * (d - l) - b * b, 0, 1e-9);
  }
}

TEST(FeaturesProperty, CurvaturesMatchShapeOperator) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const Jet j = random_jet(rng);
    const auto f = derived_features(j);
    const auto [k1, k2] = principal_curvatures(j);
    EXPECT_NEAR(f.gaussian_curvature, k1 * k2, 1e-10);
    EXPECT_NEAR(f.mean_curvature, (k1 + k2) / 2, 1e-10);
    EXPECT_NEAR(f.curvedness, std::sqrt((k1 * k1 + k2 * k2) / 2), 1e-9);
    ASSERT_TRUE(f.shape_index.has_value());
    EXPECT_NEAR(*f.shape_index, (2 / M_PI) * std::atan2(-(k1 + k2), k1 - k2), 1e-8);
    EXPECT_GE(*f.shape_index, -1);
    EXPECT_LE(*f.shape_index, 1);
  }
}

TEST(FeaturesProperty, DirectionalExtremaBySweep) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const Jet j = random_jet(rng);
    const auto f = derived_features(j);
    double mx1 = -1e300, mn1 = 1e300, mx2 = -1e300, mn2 = 1e300;
    for (int k = 0; k < 3600; ++k) {
      const double th = k * M_PI / 1800, c = std::cos(th), s = std::sin(th);
      const double d1 = c * j(1, 0) + s * j(0, 1);
      const double d2 = c * c * j(2, 0) + 2 * c * s * j(1, 1) + s * s * j(0, 2);
      mx1 = std::max(mx1, d1), mn1 = std::min(mn1, d1);
      mx2 = std::max(mx2, d2), mn2 = std::min(mn2, d2);
    }
    EXPECT_NEAR(f.first_max, mx1, 1e-4 * (1 + std::fabs(mx1)));
    EXPECT_NEAR(f.first_min, mn1, 1e-4 * (1 + std::fabs(mn1)));
    EXPECT_NEAR(f.second_max, mx2, 1e-4 * (1 + std::fabs(mx2)));
    EXPECT_NEAR(f.second_min, mn2, 1e-4 * (1 + std::fabs(mn2)));
  }
}

TEST(Features, BifAndJetNorm) {
  Jet j;
  j(1, 0) = 3;
  j(0, 1) = 4;
  j(2, 0) = 2;
  j(1, 1) = 0;
  j(0, 2) = -2;
  const auto f = derived_features(j);
  EXPECT_DOUBLE_EQ(f.bif[0], 10);
  EXPECT_DOUBLE_EQ(f.bif[1], 0);
  EXPECT_DOUBLE_EQ(f.bif[5], 4);
  EXPECT_NEAR(f.bif[3], 4 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f.jet2_norm, std::sqrt(25 + 0.5 * 8), 1e-12);
}
