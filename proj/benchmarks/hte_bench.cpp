#include <benchmark/benchmark.h>

#include "hte/adaptive_estimator.hpp"
#include "hte/ensemble.hpp"
#include "hte/grid_estimator.hpp"
#include "hte/kde.hpp"
#include "hte/synth.hpp"
#include "hte/transform.hpp"

namespace {

hte::Matrix sample(hte::synth::SynthType type, Eigen::Index n, Eigen::Index d) {
  hte::Rng rng(1);
  return hte::synth::make_type(type, d).sample(n, rng);
}

void BM_SampleRotation(benchmark::State& state) {
  hte::Rng rng(2);
  const auto d = static_cast<Eigen::Index>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hte::sample_rotation(d, rng));
}
BENCHMARK(BM_SampleRotation)->DenseRange(2, 8, 3);

void BM_GridFit(benchmark::State& state) {
  const auto data = sample(hte::synth::SynthType::BetaToy, state.range(0), 2);
  hte::Rng rng(3);
  const auto t = hte::sample_transform(2, {0.0, 1.0, hte::reference_scale(data)}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hte::fit_grid(data, t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GridFit)->RangeMultiplier(4)->Range(256, 16384);

void BM_GridEvaluate(benchmark::State& state) {
  const auto data = sample(hte::synth::SynthType::BetaToy, 2000, 2);
  const auto queries = sample(hte::synth::SynthType::BetaToy, 1000, 2);
  const auto model = hte::fit_nhte(data, {static_cast<std::size_t>(state.range(0)), 0.0, 1.0, {}, 1}, hte::Rng(4));
  for (auto _ : state) benchmark::DoNotOptimize(model.evaluate_rows(queries));
  state.SetItemsProcessed(state.iterations() * queries.rows());
}
BENCHMARK(BM_GridEvaluate)->Arg(1)->Arg(20)->Arg(100);

void BM_AdaptiveFit(benchmark::State& state) {
  const auto data = sample(hte::synth::SynthType::III, 2000, state.range(0));
  const auto m = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(hte::fit_adaptive(data, m));
}
BENCHMARK(BM_AdaptiveFit)->Args({2, 1})->Args({2, 10})->Args({5, 1})->Args({5, 10});

void BM_AhteEvaluate(benchmark::State& state) {
  const auto data = sample(hte::synth::SynthType::III, 2000, 5);
  const auto queries = sample(hte::synth::SynthType::III, 1000, 5);
  const auto model = hte::fit_ahte(data, {100, static_cast<std::uint64_t>(state.range(0)), true, 1}, hte::Rng(5));
  for (auto _ : state) benchmark::DoNotOptimize(model.evaluate_rows(queries));
  state.SetItemsProcessed(state.iterations() * queries.rows());
}
BENCHMARK(BM_AhteEvaluate)->Arg(1)->Arg(10);

void BM_KdeEvaluate(benchmark::State& state) {
  const auto data = sample(hte::synth::SynthType::II, state.range(0), 2);
  const auto queries = sample(hte::synth::SynthType::II, 1000, 2);
  const auto kde = hte::fit_kde(data);
  for (auto _ : state) benchmark::DoNotOptimize(kde.evaluate_rows(queries));
  state.SetItemsProcessed(state.iterations() * queries.rows());
}
BENCHMARK(BM_KdeEvaluate)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
