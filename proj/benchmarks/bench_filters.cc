#include <benchmark/benchmark.h>

#include "dinv/catalog.h"
#include "dinv/jet_estimation.h"
#include "dinv/kernels.h"
#include "dinv/synth_db.h"

namespace {

const dinv::Image& base() {
  static const dinv::Image b = dinv::default_base_image(0);
  return b;
}

void BM_KernelStack(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dinv::KernelStack(s));
}
BENCHMARK(BM_KernelStack)->Arg(2)->Arg(12);

void BM_LocalJet(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0));
  const dinv::KernelStack st(s);
  const auto& img = base();
  for (auto _ : state) benchmark::DoNotOptimize(dinv::local_jet(img, 256, 256, st));
}
BENCHMARK(BM_LocalJet)->Arg(2)->Arg(12);

void BM_PatchFeatureVector(benchmark::State& state) {
  const dinv::FeatureEvaluator ev(dinv::default_catalog(), dinv::select_set(4, 3, dinv::SetKind::kIR).member_ids);
  dinv::Image patch(65, 65);
  for (int y = 0; y < 65; ++y)
    for (int x = 0; x < 65; ++x) patch.at(x, y) = base().at(100 + x, 100 + y);
  for (auto _ : state) benchmark::DoNotOptimize(dinv::feature_vector(patch, ev, {12.0}));
}
BENCHMARK(BM_PatchFeatureVector);

void BM_FeatureMap(benchmark::State& state) {
  const dinv::FeatureEvaluator ev(dinv::default_catalog(), dinv::select_set(4, 3, dinv::SetKind::kIR).member_ids);
  dinv::Image img(128, 128);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) img.at(x, y) = base().at(x, y);
  for (auto _ : state) benchmark::DoNotOptimize(dinv::feature_map(img, ev, 4.0, 1));
}
BENCHMARK(BM_FeatureMap)->Unit(benchmark::kMillisecond);

void BM_RenderPatch(benchmark::State& state) {
  dinv::PatchParams p;
  p.theta = 0.9;
  const auto& img = base();
  for (auto _ : state) benchmark::DoNotOptimize(dinv::render_patch(img, 4, 4, 2, p, false));
}
BENCHMARK(BM_RenderPatch);

}  // namespace
