#include <benchmark/benchmark.h>

#include "dinv/catalog.h"
#include "dinv/construction.h"
#include "dinv/independence.h"
#include "dinv/invariance.h"
#include "dinv/random.h"

namespace {

void BM_ChainPolynomial(benchmark::State& state) {
  const auto chain = dinv::parse_chain("F(1,2).F(3,4).G(1,3).G(2,4)");
  for (auto _ : state) benchmark::DoNotOptimize(dinv::chain_polynomial(chain));
}
BENCHMARK(BM_ChainPolynomial);

void BM_EnumerateChains(benchmark::State& state) {
  const int o = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dinv::enumerate_chains(o, o, 1));
}
BENCHMARK(BM_EnumerateChains)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LinearRankLI44(benchmark::State& state) {
  const auto& cat = dinv::default_catalog();
  const auto ids = dinv::select_set(4, 4, dinv::SetKind::kLI).member_ids;
  for (auto _ : state) benchmark::DoNotOptimize(dinv::linear_rank(cat, ids, 1));
}
BENCHMARK(BM_LinearRankLI44)->Unit(benchmark::kMillisecond);

void BM_ExactRotationCheck(benchmark::State& state) {
  const auto& e = dinv::default_catalog().entry(static_cast<int>(state.range(0)));
  dinv::Rng rng(1);
  const auto m = dinv::random_pythagorean_rotation(rng);
  const auto jet = dinv::random_rational_jet(rng);
  for (auto _ : state) benchmark::DoNotOptimize(dinv::check_invariance(e.polynomial, e.chain, m, jet));
}
BENCHMARK(BM_ExactRotationCheck)->Arg(3)->Arg(230);

}  // namespace
