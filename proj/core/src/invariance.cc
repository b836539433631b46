#include "dinv/invariance.h"

#include <numeric>
#include <stdexcept>

namespace dinv {

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::kEuclidean:
      return "euclidean";
    case MapKind::kSimilarity:
      return "similarity";
    case MapKind::kAffine:
      return "affine";
  }
  return "?";
}

LinearMap2::LinearMap2(Rational a_, Rational b_, Rational c_, Rational d_, MapKind k)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)), kind(k) {
  if (det() == 0) throw std::invalid_argument("singular linear map " + to_string());
  if (kind != MapKind::kAffine) {
    if (a != d || b != -c) throw std::invalid_argument("map " + to_string() + " is not a rotation-scaling");
    if (kind == MapKind::kEuclidean && a * a + b * b != 1)
      throw std::invalid_argument("euclidean map " + to_string() + " has scale != 1");
  }
}

LinearMap2 LinearMap2::identity() { return {1, 0, 0, 1, MapKind::kEuclidean}; }

LinearMap2 LinearMap2::rotation(const Rational& cos, const Rational& sin) {
  return {cos, sin, -sin, cos, MapKind::kEuclidean};
}

LinearMap2 LinearMap2::similarity(const Rational& scale, const Rational& cos, const Rational& sin) {
  if (cos * cos + sin * sin != 1) throw std::invalid_argument("similarity needs cos^2 + sin^2 = 1");
  if (scale <= 0) throw std::invalid_argument("similarity scale must be positive");
  return {scale * cos, scale * sin, -scale * sin, scale * cos, MapKind::kSimilarity};
}

LinearMap2 LinearMap2::affine(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return {a, b, c, d, MapKind::kAffine};
}

LinearMap2 LinearMap2::inverse() const {
  const Rational k = det();
  return {d / k, -b / k, -c / k, a / k, kind};
}

LinearMap2 LinearMap2::compose(const LinearMap2& o) const {
  const MapKind k = (kind == MapKind::kAffine || o.kind == MapKind::kAffine)           ? MapKind::kAffine
                    : (kind == MapKind::kSimilarity || o.kind == MapKind::kSimilarity) ? MapKind::kSimilarity
                                                                                       : MapKind::kEuclidean;
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, k};
}

std::string LinearMap2::to_string() const {
  return "[[" + dinv::to_string(a) + ", " + dinv::to_string(b) + "], [" + dinv::to_string(c) + ", " +
         dinv::to_string(d) + "]]";
}

namespace {

constexpr int kBinom[5][5] = {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

template <typename T>
T ipow(const T& x, int e) {
  T r(1);
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

// h_ij = (n11 dx + n21 dy)^i (n12 dx + n22 dy)^j f with N = M^-1.
template <typename T>
BasicJet<T> transform(const BasicJet<T>& jet, const T& n11, const T& n12, const T& n21, const T& n22) {
  BasicJet<T> out(jet.max_order());
  for (int m = 1; m <= jet.max_order(); ++m) {
    for (int i = m; i >= 0; --i) {
      const int j = m - i;
      T sum(0);
      for (int a = 0; a <= i; ++a) {
        const T ca = T(kBinom[i][a]) * ipow(n11, a) * ipow(n21, i - a);
        for (int b = 0; b <= j; ++b) {
          const T cb = T(kBinom[j][b]) * ipow(n12, b) * ipow(n22, j - b);
          sum += ca * cb * jet(a + b, m - a - b);
        }
      }
      out(i, j) = sum;
    }
  }
  return out;
}

}  // namespace

RationalJet jet_transform(const RationalJet& jet, const LinearMap2& m) {
  const LinearMap2 n = m.inverse();
  return transform<Rational>(jet, n.a, n.b, n.c, n.d);
}

Jet jet_transform(const Jet& jet, const LinearMap2& m) {
  const LinearMap2 n = m.inverse();
  return transform<double>(jet, n.a.get_d(), n.b.get_d(), n.c.get_d(), n.d.get_d());
}

Jet jet_transform_inverse(const Jet& jet, const std::array<double, 4>& inv) {
  return transform<double>(jet, inv[0], inv[1], inv[2], inv[3]);
}

std::optional<Rational> chain_weight(const OperatorChain& chain, const LinearMap2& m) {
  const int P = chain.f_count();
  const int Q = chain.g_count();
  switch (m.kind) {
    case MapKind::kEuclidean:
      return Rational(1);
    case MapKind::kSimilarity:
      return pow(Rational(m.a * m.a + m.b * m.b), -(P + Q));
    case MapKind::kAffine:
      if (P != 0) return std::nullopt;
      return pow(m.det(), -Q);
  }
  return std::nullopt;
}

std::optional<Rational> check_invariance(const InvariantPolynomial& inv, const OperatorChain& chain,
                                         const LinearMap2& m, const RationalJet& jet) {
  const auto w = chain_weight(chain, m);
  if (!w) return std::nullopt;
  return Rational(inv.eval(jet_transform(jet, m)) - *w * inv.eval(jet));
}

std::optional<double> check_invariance(const InvariantPolynomial& inv, const OperatorChain& chain,
                                       const LinearMap2& m, const Jet& jet) {
  const auto w = chain_weight(chain, m);
  if (!w) return std::nullopt;
  return inv.eval(jet_transform(jet, m)) - w->get_d() * inv.eval(jet);
}

RationalJet random_rational_jet(Rng& rng, int max_order) {
  static constexpr int kDen[] = {1, 2, 4, 8};
  RationalJet jet(max_order);
  for (int m = 1; m <= max_order; ++m) {
    for (int i = m; i >= 0; --i) {
      jet(i, m - i) = make_rational(rng.uniform_int(-24, 24), kDen[rng.uniform_int(0, 3)]);
    }
  }
  return jet;
}

namespace {

std::pair<Rational, Rational> pythagorean_pair(Rng& rng) {
  long m, n;
  do {
    m = rng.uniform_int(2, 12);
    n = rng.uniform_int(1, m - 1);
  } while (std::gcd(m, n) != 1 || (m - n) % 2 == 0);
  Rational c = make_rational(m * m - n * n, m * m + n * n);
  Rational s = make_rational(2 * m * n, m * m + n * n);
  if (rng.uniform_int(0, 1)) std::swap(c, s);
  if (rng.uniform_int(0, 1)) c = -c;
  if (rng.uniform_int(0, 1)) s = -s;
  return {c, s};
}

}  // namespace

LinearMap2 random_pythagorean_rotation(Rng& rng) {
  auto [c, s] = pythagorean_pair(rng);
  return LinearMap2::rotation(c, s);
}

LinearMap2 random_similarity(Rng& rng) {
  auto [c, s] = pythagorean_pair(rng);
  const Rational scale = make_rational(rng.uniform_int(1, 9), rng.uniform_int(1, 4));
  return LinearMap2::similarity(scale, c, s);
}

LinearMap2 random_affine(Rng& rng) {
  auto entry = [&]() {
    return make_rational(rng.uniform_int(-6, 6), rng.uniform_int(1, 3));
  };
  while (true) {
    Rational a = entry(), b = entry(), c = entry(), d = entry();
    if (a * d - b * c != 0) return LinearMap2::affine(a, b, c, d);
  }
}

nlohmann::json InvarianceRecord::to_json() const {
  return {{"name", name},
          {"chain", chain},
          {"group", dinv::to_string(group)},
          {"trials", trials},
          {"max_residual", dinv::to_string(max_residual)},
          {"status", status}};
}

InvarianceRecord invariance_trials(const std::string& name, const OperatorChain& chain,
                                   const InvariantPolynomial& inv, MapKind group, int trials, std::uint64_t seed) {
  InvarianceRecord rec{name, to_string(chain), group, 0, Rational(0), "exact"};
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const LinearMap2 m = group == MapKind::kEuclidean    ? random_pythagorean_rotation(rng)
                         : group == MapKind::kSimilarity ? random_similarity(rng)
                                                         : random_affine(rng);
    const RationalJet jet = random_rational_jet(rng);
    const auto r = check_invariance(inv, chain, m, jet);
    if (!r) {
      rec.status = "no-claim";
      rec.trials = 0;
      return rec;
    }
    ++rec.trials;
    const Rational mag = abs(*r);
    if (mag > rec.max_residual) rec.max_residual = mag;
  }
  if (rec.max_residual != 0) rec.status = "fail";
  return rec;
}

}  // namespace dinv
