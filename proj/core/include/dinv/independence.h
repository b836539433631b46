#ifndef DINV_INDEPENDENCE_H_
#define DINV_INDEPENDENCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dinv/catalog.h"
#include "dinv/polynomial.h"

namespace dinv {

struct RankResult {
  int rank = 0;
  // "modular" when both primes agree, "exact" after a rational fallback.
  std::string method;
};

// Rank of the coefficient matrix over the monomial basis. Computed modulo
// 2^61-1 and a second prime near 2^61; falls back to exact rational
// elimination when they disagree or a denominator vanishes modulo a prime.
RankResult linear_rank(const std::vector<InvariantPolynomial>& polys, int threads = 0);
RankResult linear_rank(const Catalog& catalog, const std::vector<int>& ids, int threads = 0);
// Always exact; used by tests as the reference.
int exact_linear_rank(const std::vector<InvariantPolynomial>& polys);

// Rank of all collapsed generators with order <= max_order, degree <= max_degree.
RankResult span_dimension(int max_order, int max_degree, int threads = 0);

struct JacobianRank {
  int rank = 0;                 // maximum over seeds
  std::vector<int> per_seed;    // one entry per sampled jet
  int columns = 0;
};

// Jacobian of the polynomials with respect to all symbols of order 1..max_order,
// evaluated exactly at `seeds` random rational jets.
JacobianRank jacobian_rank(const std::vector<InvariantPolynomial>& polys, int max_order, int seeds = 3,
                           std::uint64_t seed = 0);
JacobianRank jacobian_rank(const Catalog& catalog, const std::vector<int>& ids, int max_order, int seeds = 3,
                           std::uint64_t seed = 0);

struct CountRow {
  std::string set;
  int expected = 0;
  int computed = 0;
  std::string method;
  bool pass = false;

  nlohmann::json to_json() const;
};

// Twelve rows: LI sets by linear rank, IR sets by cardinality (with a full
// linear-rank check), FI sets by Jacobian rank.
std::vector<CountRow> count_report(const Catalog& catalog, int threads = 0, std::uint64_t seed = 0);

}  // namespace dinv

#endif  // DINV_INDEPENDENCE_H_
