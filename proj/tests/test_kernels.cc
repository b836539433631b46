#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dinv/hermite.h"
#include "dinv/kernels.h"

using namespace dinv;

namespace {

// d^k/dx^k of the normalized 1-D Gaussian, written out by hand.
double gauss_deriv(int k, double x, double s) {
  const double g = std::exp(-x * x / (2 * s * s)) / (std::sqrt(2 * M_PI) * s);
  const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2, s8 = s4 * s4;
  switch (k) {
    case 0: return g;
    case 1: return -x / s2 * g;
    case 2: return (x * x / s4 - 1 / s2) * g;
    case 3: return (-x * x * x / s6 + 3 * x / s4) * g;
    case 4: return (x * x * x * x / s8 - 6 * x * x / s6 + 3 / s4) * g;
  }
  throw std::invalid_argument("order");
}

}  // namespace

TEST(KernelSize, Default) {
  EXPECT_EQ(default_kernel_size(1.0), 11);
  EXPECT_EQ(default_kernel_size(0.5), 7);
  EXPECT_EQ(default_kernel_size(12.0), 121);
  EXPECT_THROW(default_kernel_size(0.0), std::invalid_argument);
}

TEST(Kernels, Errors) {
  EXPECT_THROW(gaussian_derivative_taps(1, 2.0, 20), std::invalid_argument);
  EXPECT_THROW(gaussian_derivative_taps(1, -1.0, 21), std::invalid_argument);
  EXPECT_THROW(gaussian_derivative_taps(5, 2.0, 21), std::invalid_argument);
  EXPECT_THROW(KernelStack(2.0, 20), std::invalid_argument);
  EXPECT_THROW(gaussian_derivative_kernel(3, 2, 2.0, 21), std::invalid_argument);
}

TEST(Kernels, SmoothingSumsToOneAndOddSumsToZero) {
  for (double s : {0.8, 2.0, 6.0, 12.0}) {
    const KernelStack st(s);
    double sum0 = 0;
    for (double v : st.taps(0)) sum0 += v;
    EXPECT_NEAR(sum0, 1.0, 1e-12);
    for (int k : {1, 3}) {
      // summed in mirrored pairs so antisymmetry cancels without rounding
      const auto& t = st.taps(k);
      const std::size_t r = t.size() / 2;
      double sum = t[r];
      for (std::size_t u = 1; u <= r; ++u) sum += t[r + u] + t[r - u];
      EXPECT_EQ(sum, 0.0) << "order " << k;
    }
  }
}

TEST(KernelsProperty, Parity) {
  for (double s : {1.0, 3.5, 12.0})
    for (int k = 0; k <= 4; ++k) {
      const auto t = gaussian_derivative_taps(k, s, default_kernel_size(s));
      const int r = static_cast<int>(t.size()) / 2;
      for (int u = 1; u <= r; ++u) EXPECT_EQ(t[r + u], (k % 2 ? -1 : 1) * t[r - u]);
    }
}

TEST(KernelsProperty, DiscreteMomentsMatchContinuous) {
  // sum_u u^m sigma^k g^(k)(u) = (-1)^k m!/(m-k)! sigma^k E[X^(m-k)], X ~ N(0, sigma^2)
  for (double s : {1.0, 2.5, 12.0})
    for (int k = 0; k <= 4; ++k) {
      const auto t = gaussian_derivative_taps(k, s, 65);
      const int r = 32;
      for (int m = 0; m <= 4; ++m) {
        double mom = 0;
        for (int u = -r; u <= r; ++u) mom += std::pow(u / s, m) * t[u + r];
        double want = 0;
        if (m >= k && (m - k) % 2 == 0) {
          double fall = 1;
          for (int q = 0; q < k; ++q) fall *= m - q;
          const double e = (m - k == 0) ? 1 : (m - k == 2) ? 1 : 3;
          want = (k % 2 ? -1 : 1) * fall * e;
        }
        EXPECT_NEAR(mom, want, 1e-10) << "sigma " << s << " order " << k << " moment " << m;
      }
    }
}

TEST(Kernels, CloseToSampledDerivativeAtDefaultSize) {
  // The moment correction absorbs the truncated tails; for order 4 that moves
  // taps by a few tenths of a percent of the peak.
  for (double s : {2.0, 6.0})
    for (int k = 0; k <= 4; ++k) {
      const int n = default_kernel_size(s);
      const auto t = gaussian_derivative_taps(k, s, n);
      double peak = 0, err = 0;
      for (int u = -n / 2; u <= n / 2; ++u) {
        const double want = std::pow(s, k) * gauss_deriv(k, u, s);
        peak = std::max(peak, std::fabs(want));
        err = std::max(err, std::fabs(t[u + n / 2] - want));
      }
      EXPECT_LT(err, 1e-2 * peak) << "sigma " << s << " order " << k;
    }
}

TEST(Kernels, SeparableOuterProduct) {
  const KernelStack st(12.0, 65);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      const auto k = st.kernel(i, j);
      ASSERT_EQ(k.size(), 65u * 65u);
      for (int v = 0; v < 65; v += 7)
        for (int u = 0; u < 65; u += 5) EXPECT_EQ(k[v * 65 + u], st.taps(i)[u] * st.taps(j)[v]);
    }
}

TEST(Hermite, KnownPolynomials) {
  for (double x : {-1.7, 0.0, 0.3, 2.2}) {
    EXPECT_DOUBLE_EQ(hermite_physicists(0, x), 1.0);
    EXPECT_DOUBLE_EQ(hermite_physicists(1, x), 2 * x);
    EXPECT_NEAR(hermite_physicists(2, x), 4 * x * x - 2, 1e-12);
    EXPECT_NEAR(hermite_physicists(3, x), 8 * x * x * x - 12 * x, 1e-12);
    EXPECT_NEAR(hermite_physicists(4, x), 16 * std::pow(x, 4) - 48 * x * x + 12, 1e-11);
  }
  EXPECT_THROW(hermite_physicists(-1, 0.0), std::invalid_argument);
}

TEST(Hermite, FunctionsOrthonormal) {
  const double s = 5.0;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      double sum = 0;
      for (int x = -60; x <= 60; ++x) sum += gh_function(i, x, s) * gh_function(j, x, s);
      EXPECT_NEAR(sum, i == j ? 1.0 : 0.0, 1e-9) << i << "," << j;
    }
}

TEST(Hermite, DerivativeValueMatchesHandForm) {
  const double s = 3.0;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j)
      for (double x : {-4.0, 0.5, 2.0})
        for (double y : {-1.0, 3.0}) {
          const double want = gauss_deriv(i, x, s) * gauss_deriv(j, y, s);
          EXPECT_NEAR(gaussian_derivative_value(i, j, s, x, y), want, 1e-14);
        }
}

TEST(HermiteProperty, KernelProportionalToHermiteClosedForm) {
  const double sigma = 12.0;
  const double sp = sigma / std::sqrt(2.0);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      double peak = 0, err = 0;
      for (int y = -32; y <= 32; ++y)
        for (int x = -32; x <= 32; ++x) {
          const double a = gaussian_derivative_value(i, j, sp, x, y);
          const double b = gh_closed_form(i, j, sigma, x, y);
          peak = std::max(peak, std::fabs(a));
          err = std::max(err, std::fabs(a - b));
        }
      EXPECT_LT(err, 1e-12 * std::max(peak, 1e-300) + 1e-300) << i << "," << j;
    }
}

TEST(GhMoment, ZeroPatchAndBlobCenter) {
  const Image zero(65, 65);
  EXPECT_EQ(gh_moment(zero, 2, 1, 12.0, 32, 32), 0.0);
  auto blob = [](double cx, double cy) {
    Image im(65, 65);
    for (int y = 0; y < 65; ++y)
      for (int x = 0; x < 65; ++x) im.at(x, y) = std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / 18.0);
    return im;
  };
  const double centered = gh_moment(blob(32, 32), 0, 0, 6.0, 32, 32);
  EXPECT_GT(centered, 0);
  for (auto [dx, dy] : {std::pair{3, 0}, {0, -4}, {5, 5}, {-2, 1}})
    EXPECT_LT(gh_moment(blob(32 + dx, 32 + dy), 0, 0, 6.0, 32, 32), centered);
  EXPECT_THROW(gh_moment(zero, 5, 0, 12.0, 32, 32), std::invalid_argument);
}

TEST(GhMoment, CentroidOfSymmetricPatch) {
  Image im(9, 9);
  im.at(2, 4) = 1;
  im.at(6, 4) = 1;
  const auto [cx, cy] = centroid(im);
  EXPECT_DOUBLE_EQ(cx, 4.0);
  EXPECT_DOUBLE_EQ(cy, 4.0);
  const auto [zx, zy] = centroid(Image(5, 7));
  EXPECT_DOUBLE_EQ(zx, 2.0);
  EXPECT_DOUBLE_EQ(zy, 3.0);
}

TEST(GhRelation, SeededPatchWithinTolerance) {
  const auto r = gh_relation(smooth_bump_patch(0), 12.0, 32, 32);
  for (int m = 1; m <= 4; ++m) EXPECT_LT(r.error[m], 0.10) << "order " << m;
}

TEST(GhRelationProperty, MostSeedsWithinTolerance) {
  // Rare seeds where the bumps cancel an order almost completely fall outside.
  int ok = 0;
  const int n = 60;
  for (int s = 0; s < n; ++s) ok += gh_relation(smooth_bump_patch(s), 12.0, 32, 32).max_error() < 0.10;
  EXPECT_GE(ok, n * 95 / 100);
}
