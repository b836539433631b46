#include "dinv/independence.h"

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <utility>

#include "dinv/construction.h"
#include "dinv/invariance.h"
#include "dinv/parallel.h"
#include "dinv/random.h"

namespace dinv {

namespace {

constexpr std::uint64_t kPrime1 = (1ULL << 61) - 1;
constexpr std::uint64_t kPrime2 = 2305843009213693921ULL;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t mpz_mod(const mpz_class& z, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
  return mpz_get_ui(r.get_mpz_t());
}

// Sparse row: (column, value) sorted by column.
template <typename T>
using Row = std::vector<std::pair<int, T>>;

struct ModField {
  using Value = std::uint64_t;
  std::uint64_t p;
  bool is_zero(Value v) const { return v == 0; }
  Value sub_mul(Value a, Value f, Value b) const {  // a - f*b
    const Value fb = mulmod(f, b, p);
    return a >= fb ? a - fb : a + p - fb;
  }
  Value mul(Value a, Value b) const { return mulmod(a, b, p); }
  Value inv(Value a) const { return powmod(a, p - 2, p); }
};

struct RationalField {
  using Value = Rational;
  bool is_zero(const Value& v) const { return v == 0; }
  Value sub_mul(const Value& a, const Value& f, const Value& b) const { return a - f * b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value inv(const Value& a) const { return 1 / a; }
};

// Incremental sparse elimination with unit-leading pivot rows.
template <typename Field>
int sparse_rank(std::vector<Row<typename Field::Value>> rows, const Field& field) {
  using V = typename Field::Value;
  std::map<int, Row<V>> pivots;
  for (auto& row : rows) {
    while (!row.empty()) {
      const int lead = row.front().first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const V inv = field.inv(row.front().second);
        for (auto& [c, v] : row) v = field.mul(v, inv);
        pivots.emplace(lead, std::move(row));
        break;
      }
      const V f = row.front().second;
      const auto& piv = it->second;
      Row<V> next;
      next.reserve(row.size() + piv.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < piv.size()) {
        if (b == piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
          next.push_back(std::move(row[a++]));
        } else if (a == row.size() || piv[b].first < row[a].first) {
          V v = field.sub_mul(V(0), f, piv[b].second);
          if (!field.is_zero(v)) next.emplace_back(piv[b].first, std::move(v));
          ++b;
        } else {
          V v = field.sub_mul(row[a].second, f, piv[b].second);
          if (!field.is_zero(v)) next.emplace_back(row[a].first, std::move(v));
          ++a;
          ++b;
        }
      }
      row = std::move(next);
    }
  }
  return static_cast<int>(pivots.size());
}

// Rows grouped by (degree, total derivative weight): polynomials in different
// groups share no monomials, so the rank is the sum over groups. Any
// inhomogeneous input puts everything into one group.
std::map<std::pair<int, int>, std::vector<const InvariantPolynomial*>> blocks(
    const std::vector<InvariantPolynomial>& polys) {
  std::map<std::pair<int, int>, std::vector<const InvariantPolynomial*>> out;
  const bool split = std::all_of(polys.begin(), polys.end(), [](const InvariantPolynomial& p) {
    return p.is_zero() || (p.degree() >= 0 && p.weight() >= 0);
  });
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    out[split ? std::pair{p.degree(), p.weight()} : std::pair{-1, -1}].push_back(&p);
  }
  return out;
}

template <typename Field>
std::optional<int> block_rank(const std::vector<const InvariantPolynomial*>& polys, const Field& field,
                              std::optional<std::uint64_t> modulus) {
  using V = typename Field::Value;
  std::map<Monomial, int> cols;
  for (const auto* p : polys)
    for (const auto& [m, c] : p->terms()) cols.emplace(m, 0);
  int next = 0;
  for (auto& [m, c] : cols) c = next++;
  std::vector<Row<V>> rows;
  rows.reserve(polys.size());
  for (const auto* p : polys) {
    Row<V> r;
    for (const auto& [m, c] : p->terms()) {
      if constexpr (std::is_same_v<V, Rational>) {
        r.emplace_back(cols[m], c);
      } else {
        const std::uint64_t den = mpz_mod(c.get_den(), *modulus);
        if (den == 0) return std::nullopt;
        const std::uint64_t num = mpz_mod(c.get_num(), *modulus);
        const V v = mulmod(num, powmod(den, *modulus - 2, *modulus), *modulus);
        if (v != 0) r.emplace_back(cols[m], v);
      }
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(std::move(r));
  }
  return sparse_rank(std::move(rows), field);
}

}  // namespace

int exact_linear_rank(const std::vector<InvariantPolynomial>& polys) {
  int rank = 0;
  for (const auto& [key, block] : blocks(polys)) rank += *block_rank(block, RationalField{}, std::nullopt);
  return rank;
}

RankResult linear_rank(const std::vector<InvariantPolynomial>& polys, int threads) {
  const auto groups = blocks(polys);
  std::vector<const std::vector<const InvariantPolynomial*>*> list;
  for (const auto& [key, block] : groups) list.push_back(&block);
  std::vector<int> ranks(list.size(), 0);
  std::vector<char> exact(list.size(), 0);
  parallel_for(list.size(), threads, [&](std::size_t k) {
    auto r1 = std::async(std::launch::async, [&] { return block_rank(*list[k], ModField{kPrime1}, kPrime1); });
    auto r2 = block_rank(*list[k], ModField{kPrime2}, kPrime2);
    auto a = r1.get();
    if (a && r2 && *a == *r2) {
      ranks[k] = *a;
    } else {
      ranks[k] = *block_rank(*list[k], RationalField{}, std::nullopt);
      exact[k] = 1;
    }
  });
  RankResult out{0, "modular"};
  for (std::size_t k = 0; k < list.size(); ++k) {
    out.rank += ranks[k];
    if (exact[k]) out.method = "exact";
  }
  return out;
}

RankResult linear_rank(const Catalog& catalog, const std::vector<int>& ids, int threads) {
  std::vector<InvariantPolynomial> polys;
  polys.reserve(ids.size());
  for (int id : ids) polys.push_back(catalog.entry(id).polynomial);
  return linear_rank(polys, threads);
}

RankResult span_dimension(int max_order, int max_degree, int threads) {
  const auto chains = enumerate_chains(max_order, max_degree, threads);
  std::vector<InvariantPolynomial> polys(chains.size());
  parallel_for(chains.size(), threads, [&](std::size_t k) { polys[k] = chain_polynomial(chains[k]); });
  return linear_rank(polys, threads);
}

namespace {

int dense_rank(std::vector<std::vector<Rational>> m) {
  int rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

JacobianRank jacobian_rank(const std::vector<InvariantPolynomial>& polys, int max_order, int seeds,
                           std::uint64_t seed) {
  const auto syms = derivative_symbols(max_order);
  std::vector<std::vector<InvariantPolynomial>> grads(polys.size());
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& s : syms) grads[r].push_back(polys[r].differentiate(s));
  JacobianRank out;
  out.columns = static_cast<int>(syms.size());
  Rng rng(seed);
  for (int t = 0; t < seeds; ++t) {
    const RationalJet jet = random_rational_jet(rng, max_order);
    std::vector<std::vector<Rational>> m(polys.size(), std::vector<Rational>(syms.size()));
    for (std::size_t r = 0; r < polys.size(); ++r)
      for (std::size_t c = 0; c < syms.size(); ++c) m[r][c] = grads[r][c].eval(jet);
    out.per_seed.push_back(dense_rank(std::move(m)));
    out.rank = std::max(out.rank, out.per_seed.back());
  }
  return out;
}

JacobianRank jacobian_rank(const Catalog& catalog, const std::vector<int>& ids, int max_order, int seeds,
                           std::uint64_t seed) {
  std::vector<InvariantPolynomial> polys;
  for (int id : ids) polys.push_back(catalog.entry(id).polynomial);
  return jacobian_rank(polys, max_order, seeds, seed);
}

nlohmann::json CountRow::to_json() const {
  return {{"set", set}, {"expected", expected}, {"computed", computed}, {"method", method},
          {"status", pass ? "pass" : "fail"}};
}

std::vector<CountRow> count_report(const Catalog& catalog, int threads, std::uint64_t seed) {
  std::vector<CountRow> rows;
  for (auto kind : {SetKind::kLI, SetKind::kIR, SetKind::kFI}) {
    for (int O : {4, 3}) {
      for (int D : {4, 3}) {
        const auto s = select_set(O, D, kind);
        CountRow row{s.name(), expected_cardinality(O, D, kind), 0, "", false};
        if (kind == SetKind::kLI) {
          const auto r = linear_rank(catalog, s.member_ids, threads);
          row.computed = r.rank;
          row.method = "linear-rank/" + r.method;
          row.pass = row.computed == row.expected && r.rank == static_cast<int>(s.member_ids.size());
        } else if (kind == SetKind::kIR) {
          const auto r = linear_rank(catalog, s.member_ids, threads);
          row.computed = static_cast<int>(s.member_ids.size());
          row.method = "cardinality+linear-rank/" + r.method;
          row.pass = row.computed == row.expected && r.rank == row.computed;
        } else {
          const auto r = jacobian_rank(catalog, s.member_ids, O, 3, seed);
          row.computed = r.rank;
          row.method = "jacobian-rank";
          row.pass = row.computed == row.expected &&
                     std::all_of(r.per_seed.begin(), r.per_seed.end(), [&](int v) { return v == r.rank; });
          if (D == 4) {
            const auto base = select_set(O, 3, SetKind::kFI);
            row.method += base.member_ids == s.member_ids ? "+equal-to-D3" : "+differs-from-D3";
            row.pass = row.pass && base.member_ids == s.member_ids;
          }
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace dinv
