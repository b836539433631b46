#include "dinv/hermite.h"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "dinv/jet_estimation.h"
#include "dinv/kernels.h"
#include "dinv/random.h"

namespace dinv {

namespace {

double factorial(int n) {
  double r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

double hermite_physicists(int n, double x) {
  if (n < 0) throw std::invalid_argument("negative Hermite index");
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double gh_function(int i, double x, double sigma) {
  const double norm = 1.0 / std::sqrt(std::ldexp(factorial(i), i) * std::sqrt(M_PI) * sigma);
  return norm * std::exp(-x * x / (2 * sigma * sigma)) * hermite_physicists(i, x / sigma);
}

double gaussian_derivative_value(int i, int j, double sigma, double x, double y) {
  // d^k/dx^k exp(-x^2/(2s^2)) = (-1/(s sqrt2))^k H_k(x/(s sqrt2)) exp(-x^2/(2s^2))
  const double a = sigma * std::sqrt(2.0);
  const double g = std::exp(-(x * x + y * y) / (2 * sigma * sigma)) / (2 * M_PI * sigma * sigma);
  return std::pow(-1.0 / a, i + j) * hermite_physicists(i, x / a) * hermite_physicists(j, y / a) * g;
}

double gh_closed_form(int i, int j, double sigma, double x, double y) {
  const double c = std::sqrt(std::ldexp(factorial(i) * factorial(j), i + j)) / (std::sqrt(M_PI) * sigma);
  return c * std::pow(-1.0 / sigma, i + j) * gh_function(i, x, sigma) * gh_function(j, y, sigma) *
         std::exp(-(x * x + y * y) / (2 * sigma * sigma));
}

double gh_moment(const Image& patch, int i, int j, double sigma, double x0, double y0) {
  if (i < 0 || j < 0 || i > 4 || j > 4) throw std::invalid_argument("moment indices must lie in 0..4");
  std::vector<double> hx(patch.width()), hy(patch.height());
  for (int x = 0; x < patch.width(); ++x) hx[x] = gh_function(i, x - x0, sigma);
  for (int y = 0; y < patch.height(); ++y) hy[y] = gh_function(j, y - y0, sigma);
  double s = 0;
  for (int y = 0; y < patch.height(); ++y) {
    double row = 0;
    for (int x = 0; x < patch.width(); ++x) row += hx[x] * patch.at(x, y);
    s += hy[y] * row;
  }
  return s;
}

std::pair<double, double> centroid(const Image& patch) {
  double m = 0, mx = 0, my = 0;
  for (int y = 0; y < patch.height(); ++y)
    for (int x = 0; x < patch.width(); ++x) {
      m += patch.at(x, y);
      mx += x * patch.at(x, y);
      my += y * patch.at(x, y);
    }
  if (m == 0) return {(patch.width() - 1) / 2.0, (patch.height() - 1) / 2.0};
  return {mx / m, my / m};
}

double gh_derivative_constant(int i, int j, double sigma) {
  return std::sqrt(factorial(i) * factorial(j)) / (std::sqrt(M_PI) * sigma);
}

Image smooth_bump_patch(std::uint64_t seed, int size) {
  if (size < 1) throw std::invalid_argument("patch size must be positive");
  Rng rng(subseed(seed, {0xB0B}));
  const double c = (size - 1) / 2.0;
  const double tau = 2.0;
  Image img(size, size);
  for (int k = 0; k < 4; ++k) {
    const double amp = rng.normal();
    const double bx = c + rng.uniform(-1.0, 1.0);
    const double by = c + rng.uniform(-1.0, 1.0);
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) {
        const double d2 = (x - bx) * (x - bx) + (y - by) * (y - by);
        img.at(x, y) += amp * std::exp(-d2 / (2 * tau * tau));
      }
  }
  return img;
}

double GhRelation::max_error() const { return *std::max_element(error.begin() + 1, error.end()); }

GhRelation gh_relation(const Image& patch, double sigma, double x0, double y0) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  const double s = sigma / std::sqrt(2.0);
  const KernelStack stack(s, default_kernel_size(s));
  const int ix = static_cast<int>(std::lround(x0)), iy = static_cast<int>(std::lround(y0));
  const Jet jet = local_jet(patch, ix, iy, stack, Padding::kReflect);
  GhRelation out;
  for (int m = 1; m <= kMaxJetOrder; ++m) {
    double lx = 0, xx = 0, ll = 0;
    std::vector<std::pair<double, double>> pairs;
    for (int i = m; i >= 0; --i) {
      const int j = m - i;
      const double x = gh_derivative_constant(i, j, sigma) * gh_moment(patch, i, j, sigma, x0, y0);
      pairs.emplace_back(jet(i, j), x);
      lx += jet(i, j) * x;
      xx += x * x;
      ll += jet(i, j) * jet(i, j);
    }
    if (xx == 0) {
      out.constant[m] = 0;
      out.error[m] = ll == 0 ? 0 : 1;
      continue;
    }
    const double k = lx / xx;
    double num = 0, den = 0;
    for (const auto& [l, x] : pairs) {
      num += (l - k * x) * (l - k * x);
      den += (k * x) * (k * x);
    }
    out.constant[m] = k;
    out.error[m] = den == 0 ? (num == 0 ? 0 : 1) : std::sqrt(num / den);
  }
  return out;
}

}  // namespace dinv
