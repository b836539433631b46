#ifndef DINV_JET_H_
#define DINV_JET_H_

#include <array>
#include <stdexcept>
#include <string>

#include "dinv/rational.h"

namespace dinv {

inline constexpr int kMaxJetOrder = 4;

// Values of f_ij for 1 <= i+j <= max_order at one point.
template <typename T>
class BasicJet {
 public:
  static constexpr int kSide = kMaxJetOrder + 1;

  explicit BasicJet(int max_order = kMaxJetOrder) : max_order_(max_order) {
    if (max_order < 1 || max_order > kMaxJetOrder)
      throw std::invalid_argument("jet order must lie in 1..4, got " + std::to_string(max_order));
    values_.fill(T(0));
  }

  int max_order() const { return max_order_; }
  bool has(int i, int j) const { return i >= 0 && j >= 0 && i + j >= 1 && i + j <= max_order_; }

  const T& at(int i, int j) const {
    check(i, j);
    return values_[i * kSide + j];
  }
  T& at(int i, int j) {
    check(i, j);
    return values_[i * kSide + j];
  }
  const T& operator()(int i, int j) const { return at(i, j); }
  T& operator()(int i, int j) { return at(i, j); }

  static int slot(int i, int j) { return i * kSide + j; }
  const T& raw(int slot) const { return values_[slot]; }

  friend bool operator==(const BasicJet& a, const BasicJet& b) {
    return a.max_order_ == b.max_order_ && a.values_ == b.values_;
  }

 private:
  void check(int i, int j) const {
    if (!has(i, j))
      throw std::invalid_argument("jet has no symbol f" + std::to_string(i) + std::to_string(j));
  }

  int max_order_;
  std::array<T, kSide * kSide> values_;
};

using Jet = BasicJet<double>;
using RationalJet = BasicJet<Rational>;

}  // namespace dinv

#endif  // DINV_JET_H_
