#include "dinv/kernels.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dinv/hermite.h"

namespace dinv {

int default_kernel_size(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  int n = static_cast<int>(std::ceil(10.0 * sigma + 1.0 - 1e-9));
  if (n % 2 == 0) ++n;
  return n;
}

namespace {

// Solves the small dense system a x = b in place (partial pivoting).
std::vector<long double> solve(std::vector<std::vector<long double>> a, std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    if (a[c][c] == 0) throw std::runtime_error("singular kernel moment system");
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    long double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

long double falling(int m, int k) {
  long double r = 1;
  for (int t = 0; t < k; ++t) r *= m - t;
  return r;
}

}  // namespace

std::vector<double> gaussian_derivative_taps(int order, double sigma, int size) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (size < 1 || size % 2 == 0) throw std::invalid_argument("kernel size must be odd, got " + std::to_string(size));
  if (order < 0 || order > kMaxJetOrder) throw std::invalid_argument("derivative order must lie in 0..4");
  const int r = size / 2;
  // Work in t = x / sigma so the moment system stays well scaled.
  std::vector<long double> t(size), g(size), k(size);
  const long double s2 = std::sqrt(2.0L);
  for (int u = -r; u <= r; ++u) {
    const long double tu = static_cast<long double>(u) / sigma;
    t[u + r] = tu;
    g[u + r] = std::exp(-0.5L * tu * tu) / (std::sqrt(2.0L * M_PI) * sigma);
    k[u + r] = std::pow(-1.0L / s2, order) * hermite_physicists(order, static_cast<double>(tu / s2)) * g[u + r];
  }
  // Continuous moments of sigma^k g^(k) in t: (-1)^k m!/(m-k)! E[t^(m-k)].
  auto target = [&](int m) -> long double {
    if (m < order) return 0;
    const int e = m - order;
    const long double gauss = e == 0 ? 1 : e == 2 ? 1 : e == 4 ? 3 : 0;
    return ((order % 2) ? -1 : 1) * falling(m, order) * gauss;
  };
  auto moment = [&](const std::vector<long double>& w, int m) {
    long double s = 0;
    for (int q = 0; q < size; ++q) s += std::pow(t[q], m) * w[q];
    return s;
  };
  std::vector<int> powers;
  for (int l = order % 2; l <= 4; l += 2) powers.push_back(l);
  std::vector<std::vector<long double>> a(powers.size(), std::vector<long double>(powers.size()));
  std::vector<long double> b(powers.size());
  for (std::size_t row = 0; row < powers.size(); ++row) {
    const int m = powers[row];
    for (std::size_t col = 0; col < powers.size(); ++col) a[row][col] = moment(g, m + powers[col]);
    b[row] = target(m) - moment(k, m);
  }
  const auto alpha = solve(a, b);
  std::vector<double> out(size);
  for (int q = 0; q < size; ++q) {
    long double v = k[q];
    for (std::size_t l = 0; l < powers.size(); ++l) v += alpha[l] * std::pow(t[q], powers[l]) * g[q];
    out[q] = static_cast<double>(v);
  }
  // Exact parity.
  for (int u = 1; u <= r; ++u) {
    const double avg = 0.5 * (out[r + u] + ((order % 2) ? -out[r - u] : out[r - u]));
    out[r + u] = avg;
    out[r - u] = (order % 2) ? -avg : avg;
  }
  if (order % 2) out[r] = 0.0;
  return out;
}

KernelStack::KernelStack(double sigma, int size, int max_order) : sigma_(sigma), size_(size), max_order_(max_order) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (size < 1 || size % 2 == 0) throw std::invalid_argument("kernel size must be odd, got " + std::to_string(size));
  for (int k = 0; k <= max_order; ++k) taps_.push_back(gaussian_derivative_taps(k, sigma, size));
}

std::vector<double> KernelStack::kernel(int i, int j) const {
  if (i < 0 || j < 0 || i + j > max_order_) throw std::invalid_argument("kernel order out of range");
  std::vector<double> out(static_cast<std::size_t>(size_) * size_);
  for (int v = 0; v < size_; ++v)
    for (int u = 0; u < size_; ++u) out[static_cast<std::size_t>(v) * size_ + u] = taps_[j][v] * taps_[i][u];
  return out;
}

std::vector<double> gaussian_derivative_kernel(int i, int j, double sigma, int size) {
  return KernelStack(sigma, size, std::max(i + j, 0)).kernel(i, j);
}

}  // namespace dinv
