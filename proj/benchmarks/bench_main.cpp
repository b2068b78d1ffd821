#include <benchmark/benchmark.h>

#include <bracketflow/bracketflow.hpp>

using namespace bracketflow;

namespace {

void BM_ricci(benchmark::State& state) {
  const auto mu = scenario_dpnop(1, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ricci_operator(mu));
}
BENCHMARK(BM_ricci);

void BM_field(benchmark::State& state) {
  const auto mu = scenario_nosemi2(1, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bracket_flow_field(mu, 0.5));
}
BENCHMARK(BM_field);

void BM_derivation_space(benchmark::State& state) {
  const auto mu = scenario_dpnop(1, -1, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(derivation_space(mu, DerivationConstraint::k_annihilated));
}
BENCHMARK(BM_derivation_space);

void BM_integrate_short(benchmark::State& state) {
  const auto mu = scenario_nosemi2(1, 1, 1);
  IntegrateOptions opts;
  opts.record_steps = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(mu, NormalizationPolicy::bracket_norm_unit(), 1.0, opts));
}
BENCHMARK(BM_integrate_short);

void BM_classify(benchmark::State& state) {
  const auto mu = scenario_dpnop(1, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(classify(mu));
}
BENCHMARK(BM_classify);

}  // namespace

BENCHMARK_MAIN();
