#ifndef DINV_HERMITE_H_
#define DINV_HERMITE_H_

#include <array>
#include <cstdint>
#include <utility>

#include "dinv/image.h"

namespace dinv {

// Physicists' Hermite polynomial H_n(x) (H_0 = 1, H_1 = 2x).
double hermite_physicists(int n, double x);

// Normalized Gaussian-Hermite function
//   (2^i i! sqrt(pi) sigma)^(-1/2) exp(-x^2 / (2 sigma^2)) H_i(x / sigma).
double gh_function(int i, double x, double sigma);

// Value of d^{i+j} G(x, y; sigma) / dx^i dy^j for the normalized 2D Gaussian
// centered at the origin (no sigma^{i+j} factor).
double gaussian_derivative_value(int i, int j, double sigma, double x, double y);

// The same derivative at scale sigma / sqrt(2), written through the
// Gaussian-Hermite functions at scale sigma:
//   (2^{i+j} i! j!)^(1/2) / (sqrt(pi) sigma) (-1/sigma)^{i+j}
//     * gh_i(x) gh_j(y) exp(-(x^2 + y^2) / (2 sigma^2)).
double gh_closed_form(int i, int j, double sigma, double x, double y);

// Gaussian-Hermite moment sum_xy gh_i(x - x0) gh_j(y - y0) f(x, y).
double gh_moment(const Image& patch, int i, int j, double sigma, double x0, double y0);

// Intensity centroid (x, y); the patch center when the total mass is zero.
std::pair<double, double> centroid(const Image& patch);

// (i! j!)^(1/2) / (sqrt(pi) sigma): with sigma' = sigma / sqrt(2), the
// normalized response L_ij(sigma') equals this constant times the
// Gaussian-Hermite sum at sigma carrying the extra weight
// exp(-(x^2 + y^2) / (2 sigma^2)). Without that weight the two agree only for
// content concentrated near (x0, y0).
double gh_derivative_constant(int i, int j, double sigma);

// Sum of four Gaussian bumps (width 2 px, normal amplitudes) whose centers lie
// within 1 px of the patch center. Content concentrated near the center is
// where derivative responses and Gaussian-Hermite moments line up.
Image smooth_bump_patch(std::uint64_t seed, int size = 65);

// Per-order comparison of L_ij(x0, y0; sigma / sqrt2) with X_ij =
// gh_derivative_constant(i, j, sigma) * gh_moment(i, j, sigma). For order m,
// K_m = <L, X> / <X, X> and error_m = |L - K_m X| / |K_m X| over the m+1
// entries of that order.
struct GhRelation {
  std::array<double, 5> constant{};
  std::array<double, 5> error{};
  double max_error() const;
};

GhRelation gh_relation(const Image& patch, double sigma, double x0, double y0);

}  // namespace dinv

#endif  // DINV_HERMITE_H_
