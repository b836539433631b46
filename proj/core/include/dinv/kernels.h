#ifndef DINV_KERNELS_H_
#define DINV_KERNELS_H_

#include <array>
#include <vector>

#include "dinv/jet.h"

namespace dinv {

// Smallest odd integer >= 10 sigma + 1. The moment correction below bends
// the tails of kernels truncated nearer than 5 sigma enough to make their
// separable products visibly anisotropic.
int default_kernel_size(double sigma);

// Samples of sigma^k d^k/dx^k g(x; sigma) at integer offsets -r..r (size = 2r+1),
// from the Hermite closed form. A correction sum_l a_l x^l g(x) of matching
// parity is added so the discrete moments 0..4 equal the continuous ones;
// polynomials of degree <= 4 are then differentiated exactly. This makes the
// order-0 taps sum to 1 and odd-order taps sum to 0.
std::vector<double> gaussian_derivative_taps(int order, double sigma, int size);

// Separable 2D derivative-of-Gaussian kernels for one sigma.
class KernelStack {
 public:
  // Throws std::invalid_argument for sigma <= 0 or an even size.
  KernelStack(double sigma, int size, int max_order = kMaxJetOrder);
  explicit KernelStack(double sigma) : KernelStack(sigma, default_kernel_size(sigma)) {}

  double sigma() const { return sigma_; }
  int size() const { return size_; }
  int radius() const { return size_ / 2; }
  int max_order() const { return max_order_; }
  const std::vector<double>& taps(int order) const { return taps_.at(order); }

  // Row-major size x size grid of sigma^{i+j} d^{i+j}G / dx^i dy^j; entry
  // (row v, column u) is the value at offset (u - r, v - r).
  std::vector<double> kernel(int i, int j) const;

 private:
  double sigma_;
  int size_;
  int max_order_;
  std::vector<std::vector<double>> taps_;
};

// Same as KernelStack::kernel without building the stack.
std::vector<double> gaussian_derivative_kernel(int i, int j, double sigma, int size);

}  // namespace dinv

#endif  // DINV_KERNELS_H_
