#include <benchmark/benchmark.h>

#include <random>

#include "pulseswitch/expm.hpp"
#include "pulseswitch/floquet.hpp"
#include "pulseswitch/lindblad.hpp"

using namespace pulseswitch;

namespace {

ModelConfig sw_model(double cyclic_c) {
  const SquareWaveEnvelope probe(angular(0.5), 0.01);
  return ModelConfig::three_level_sw(0.0, probe, probe.with_peak(angular(cyclic_c)));
}

void BM_Expm9x9(benchmark::State& state) {
  const ComplexMatrix l =
      liouvillian_matrix(hamiltonian_at(sw_model(100.0), 0.001), DissipatorSpec::standard()).matrix * 0.005;
  for (auto _ : state) benchmark::DoNotOptimize(expm(l));
}
BENCHMARK(BM_Expm9x9);

void BM_EvolveOnePeriod(benchmark::State& state) {
  const ModelConfig cfg = sw_model(100.0);
  const DensityMatrix rho0 = DensityMatrix::pure(3, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve(cfg, DissipatorSpec::standard(), rho0, 0.01, 1e-5, {1000}));
}
BENCHMARK(BM_EvolveOnePeriod)->Unit(benchmark::kMicrosecond);

void BM_FindNess(benchmark::State& state) {
  const ModelConfig cfg = sw_model(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_ness(cfg, DissipatorSpec::standard()));
}
BENCHMARK(BM_FindNess)->Arg(20)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_StaticSteadyState(benchmark::State& state) {
  const ComplexMatrix h0 = floquet_blocks(sw_model(50.0), 1).h0;
  for (auto _ : state) benchmark::DoNotOptimize(static_steady_state(h0, DissipatorSpec::standard()));
}
BENCHMARK(BM_StaticSteadyState);

}  // namespace

BENCHMARK_MAIN();
