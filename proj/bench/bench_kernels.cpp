// Serial reference kernels against their OpenMP counterparts.
// Argument 0 selects the kernel: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "lpnorm/certificates.hpp"
#include "lpnorm/copson.hpp"
#include "lpnorm/factorable.hpp"
#include "lpnorm/hlp.hpp"
#include "lpnorm/strengthened.hpp"

using namespace lpnorm;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

const WeightSequence& big_weights() {
  static const WeightSequence w = build_weights(WeightSpec::power(0.7), 2000000);
  return w;
}

void BM_Cor12Scan(benchmark::State& state) {
  const auto& w = big_weights();
  const CheckOptions opt{kConditionTol, exec_of(state)};
  for (auto _ : state) benchmark::DoNotOptimize(check_cor12(w, 2.0, 0.7, opt));
  label(state);
}

void BM_Thm17Scan(benchmark::State& state) {
  static const FactorableSpec spec = weighted_mean(big_weights());
  const CheckOptions opt{kConditionTol, exec_of(state)};
  for (auto _ : state) benchmark::DoNotOptimize(check_thm17(spec, 2.0, 0.7, opt));
  label(state);
}

void BM_CopsonTrials(benchmark::State& state) {
  const auto w = build_weights(WeightSpec::power(1.0), 1000);
  TrialOptions opt;
  opt.trials = 400;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(check_copson_numeric(w, 2.0, 1.5, CopsonBranch::b11, opt));
  label(state);
}

void BM_StrengthenedTrials(benchmark::State& state) {
  const auto w = build_weights(WeightSpec::constant(), 1000);
  const auto sc = resolve_case({StrengthenedKind::s18, 2.0, 1.5, kNaN}, w);
  StrengthenedOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(check_strengthened(sc, w, opt));
  label(state);
}

void BM_HlpProbeGrid(benchmark::State& state) {
  const double p = 0.3;
  const std::vector<double> s{1.0 / p + 0.01, 1.0 / p + 0.1, 1.0 / p + 0.5, 1.0 / p + 2.0};
  const std::vector<std::size_t> n{1000, 10000, 100000, 1000000};
  for (auto _ : state) benchmark::DoNotOptimize(probe_hlp_grid(p, s, n, exec_of(state)));
  label(state);
}

void BM_HlpDualTrials(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hlp_dual_trials(0.35, 1000, 500, 1, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_Cor12Scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Thm17Scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CopsonTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_StrengthenedTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HlpProbeGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HlpDualTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
