#include "dinv/construction.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dinv/parallel.h"

namespace dinv {

PointPolynomial PointPolynomial::unit(int n) {
  if (n < 1) throw std::invalid_argument("point count must be positive");
  PointPolynomial p;
  p.n = n;
  p.terms.emplace(PointMonomial(static_cast<std::size_t>(n), 0), 1);
  return p;
}

void PointPolynomial::add_term(const PointMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

namespace {

constexpr std::uint8_t kDx = 1 << 4;
constexpr std::uint8_t kDy = 1;

void check_orders(const PointMonomial& m) {
  for (auto c : m)
    if ((c >> 4) >= 15 || (c & 15) >= 15)
      throw std::overflow_error("derivative order exceeds the packed symbol range");
}

}  // namespace

PointPolynomial apply_operator(const Operator& op, const PointPolynomial& poly) {
  if (op.kind == OpKind::G && op.p == op.q)
    throw std::invalid_argument("identically zero operator " + to_string(op));
  if (op.p < 1 || op.q < 1 || op.p > poly.n || op.q > poly.n)
    throw std::invalid_argument("operator " + to_string(op) + " outside points 1.." + std::to_string(poly.n));
  PointPolynomial out;
  out.n = poly.n;
  const std::size_t p = static_cast<std::size_t>(op.p - 1);
  const std::size_t q = static_cast<std::size_t>(op.q - 1);
  for (const auto& [m, c] : poly.terms) {
    check_orders(m);
    PointMonomial a = m;
    PointMonomial b = m;
    if (op.kind == OpKind::F) {
      a[p] += kDx;
      a[q] += kDx;
      b[p] += kDy;
      b[q] += kDy;
      out.add_term(a, c);
      out.add_term(b, c);
    } else {
      a[p] += kDx;
      a[q] += kDy;
      b[p] += kDy;
      b[q] += kDx;
      out.add_term(a, c);
      out.add_term(b, -c);
    }
  }
  return out;
}

PointPolynomial apply_chain(const OperatorChain& chain) {
  if (chain.n < 1) throw std::invalid_argument("chain has no points");
  if (!chain.covers_all_points())
    throw std::invalid_argument("degree/coverage violation: chain " + to_string(chain) + " leaves a point of 1.." +
                                std::to_string(chain.n) + " unused");
  PointPolynomial poly = PointPolynomial::unit(chain.n);
  for (const auto& op : chain.ops) poly = apply_operator(op, poly);
  if (chain.sign < 0)
    for (auto& [m, c] : poly.terms) c = -c;
  return poly;
}

InvariantPolynomial collapse(const PointPolynomial& poly) {
  InvariantPolynomial out;
  for (const auto& [m, c] : poly.terms) out.add_term(Monomial(m.begin(), m.end()), c);
  return out;
}

InvariantPolynomial chain_polynomial(const OperatorChain& chain) { return collapse(apply_chain(chain)); }

namespace {

struct Search {
  int n;
  int max_order;
  std::vector<Operator> alphabet;
  std::set<std::vector<Operator>>* out;

  void run(std::size_t from, std::vector<Operator>& ops, std::vector<int>& use) {
    if (!ops.empty() && std::all_of(use.begin(), use.end(), [](int u) { return u > 0; })) {
      OperatorChain c{ops, n, 1};
      out->insert(canonical_chain(c).ops);
    }
    for (std::size_t k = from; k < alphabet.size(); ++k) {
      const auto& op = alphabet[k];
      use[op.p - 1]++;
      use[op.q - 1]++;
      if (use[op.p - 1] <= max_order && use[op.q - 1] <= max_order) {
        ops.push_back(op);
        run(k, ops, use);
        ops.pop_back();
      }
      use[op.p - 1]--;
      use[op.q - 1]--;
    }
  }
};

}  // namespace

std::vector<OperatorChain> enumerate_chains(int max_order, int max_degree, int threads) {
  if (max_order < 1 || max_order > 4 || max_degree < 1 || max_degree > 4)
    throw std::invalid_argument("enumeration bounds must lie in 1..4");
  std::vector<OperatorChain> result;
  for (int n = 1; n <= max_degree; ++n) {
    std::vector<Operator> alphabet;
    for (int p = 1; p <= n; ++p)
      for (int q = p; q <= n; ++q) alphabet.push_back({OpKind::F, p, q});
    for (int p = 1; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q) alphabet.push_back({OpKind::G, p, q});
    std::sort(alphabet.begin(), alphabet.end());

    // Partition by the first operator of the nondecreasing list.
    std::vector<std::set<std::vector<Operator>>> parts(alphabet.size());
    parallel_for(alphabet.size(), threads, [&](std::size_t first) {
      Search s{n, max_order, alphabet, &parts[first]};
      std::vector<Operator> ops{alphabet[first]};
      std::vector<int> use(static_cast<std::size_t>(n), 0);
      use[alphabet[first].p - 1]++;
      use[alphabet[first].q - 1]++;
      if (use[alphabet[first].p - 1] <= max_order && use[alphabet[first].q - 1] <= max_order)
        s.run(first, ops, use);
    });
    std::set<std::vector<Operator>> merged;
    for (auto& part : parts) merged.merge(part);
    for (const auto& ops : merged) result.push_back({ops, n, 1});
  }
  return result;
}

}  // namespace dinv
