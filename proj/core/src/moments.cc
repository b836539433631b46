#include "dinv/moments.h"

#include <algorithm>
#include <stdexcept>

#include "dinv/construction.h"

namespace dinv {

RationalJet central_moments(const PointCloud& cloud, int max_order) {
  Rational m0 = 0, mx = 0, my = 0;
  for (const auto& p : cloud) {
    m0 += p.w;
    mx += p.w * p.x;
    my += p.w * p.y;
  }
  if (m0 == 0) throw std::invalid_argument("point cloud has zero total weight");
  const Rational xc = mx / m0, yc = my / m0;
  RationalJet eta(max_order);
  for (const auto& p : cloud) {
    const Rational dx = p.x - xc, dy = p.y - yc;
    std::array<Rational, kMaxJetOrder + 1> px, py;
    px[0] = 1;
    py[0] = 1;
    for (int k = 1; k <= max_order; ++k) {
      px[k] = px[k - 1] * dx;
      py[k] = py[k - 1] * dy;
    }
    for (int i = 0; i <= max_order; ++i)
      for (int j = 0; i + j <= max_order; ++j)
        if (i + j >= 1) eta(i, j) += p.w * px[i] * py[j];
  }
  return eta;
}

PointCloud transform_cloud(const PointCloud& cloud, const LinearMap2& m) {
  PointCloud out;
  out.reserve(cloud.size());
  for (const auto& p : cloud) out.push_back({m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y, p.w});
  return out;
}

Rational moment_isomorphism_check(const OperatorChain& chain, const InvariantPolynomial& inv, const PointCloud& cloud,
                                  const LinearMap2& m) {
  if (chain.f_count() != 0) throw std::invalid_argument("moment isomorphism needs a G-only chain");
  if (cloud.empty()) throw std::invalid_argument("empty point cloud");
  const int order = std::max(inv.max_order(), 1);
  const Rational before = inv.eval(central_moments(cloud, order));
  const Rational after = inv.eval(central_moments(transform_cloud(cloud, m), order));
  return after - pow(m.det(), chain.g_count()) * before;
}

Rational moment_isomorphism_check(const OperatorChain& chain, const PointCloud& cloud, const LinearMap2& m) {
  return moment_isomorphism_check(chain, chain_polynomial(chain), cloud, m);
}

PointCloud random_rational_cloud(Rng& rng, int n) {
  if (n < 1) throw std::invalid_argument("cloud needs at least one point");
  PointCloud c;
  for (int k = 0; k < n; ++k)
    c.push_back({make_rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 4)),
                 make_rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 4)),
                 make_rational(rng.uniform_int(1, 9), rng.uniform_int(1, 3))});
  return c;
}

}  // namespace dinv
