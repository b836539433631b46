#include <gtest/gtest.h>

#include <map>

#include "dinv/catalog.h"
#include "dinv/independence.h"
#include "dinv/random.h"

using namespace dinv;

namespace {

// Plain dense Gaussian elimination over the rationals.
int oracle_rank(const std::vector<InvariantPolynomial>& polys) {
  std::map<Monomial, int> cols;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms()) cols.emplace(m, static_cast<int>(cols.size()));
  std::vector<std::vector<Rational>> a(polys.size(), std::vector<Rational>(cols.size()));
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [m, c] : polys[r].terms()) a[r][cols[m]] = c;
  int rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < static_cast<int>(a.size()); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols.size(); ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(LinearRank, HandCases) {
  const auto d1 = parse_polynomial("f{10}^2 + f{01}^2");
  const auto d2 = parse_polynomial("f{20} + f{02}");
  EXPECT_EQ(linear_rank({d1, d1 * make_rational(3), d2}, 1).rank, 2);
  EXPECT_EQ(linear_rank({d1, d2, d1 + d2}, 1).rank, 2);
  EXPECT_EQ(linear_rank({}, 1).rank, 0);
  EXPECT_EQ(linear_rank({InvariantPolynomial()}, 1).rank, 0);
}

TEST(LinearRankProperty, AgreesWithOracleOnRandomSubsets) {
  const auto& cat = default_catalog();
  Rng rng(12);
  for (int t = 0; t < 8; ++t) {
    std::vector<InvariantPolynomial> polys;
    const int n = static_cast<int>(rng.uniform_int(5, 25));
    for (int k = 0; k < n; ++k) polys.push_back(cat.entry(static_cast<int>(rng.uniform_int(1, 230))).polynomial);
    // a dependent combination
    polys.push_back(polys[0] * make_rational(2, 3) - polys[1]);
    const int want = oracle_rank(polys);
    EXPECT_EQ(linear_rank(polys, 2).rank, want);
    EXPECT_EQ(exact_linear_rank(polys), want);
  }
}

TEST(LinearRank, CatalogSets) {
  const auto& cat = default_catalog();
  EXPECT_EQ(linear_rank(cat, select_set(3, 3, SetKind::kLI).member_ids, 0).rank, 25);
  EXPECT_EQ(linear_rank(cat, select_set(4, 3, SetKind::kLI).member_ids, 0).rank, 59);
}

TEST(SpanDimension, SmallBounds) {
  EXPECT_EQ(span_dimension(2, 1, 1).rank, 1);
  EXPECT_EQ(span_dimension(3, 3, 0).rank, 25);
}

TEST(JacobianRank, FunctionalDependenceDetected) {
  const auto d1 = parse_polynomial("f{10}^2 + f{01}^2");
  const auto d2 = parse_polynomial("f{20} + f{02}");
  // d1^2 depends functionally (not linearly) on d1
  EXPECT_EQ(jacobian_rank({d1, pow(d1, 2)}, 2).rank, 1);
  EXPECT_EQ(jacobian_rank({d1, d2}, 2).rank, 2);
  EXPECT_EQ(jacobian_rank({d1, d2, d1 * d2}, 2).rank, 2);
  const auto j = jacobian_rank({d1, d2}, 2, 4, 9);
  EXPECT_EQ(j.per_seed.size(), 4u);
  EXPECT_EQ(j.columns, 5);
}

TEST(CountReport, RowsPass) {
  const auto rows = count_report(default_catalog(), 0, 0);
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.set << " expected " << r.expected << " got " << r.computed;
}
