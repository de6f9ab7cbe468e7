#include <benchmark/benchmark.h>

#include "cuspwave/stream.hpp"
#include "cuspwave/sturm.hpp"
#include "cuspwave/vorticity.hpp"
#include "cuspwave/wave.hpp"

namespace {

using namespace cuspwave;

const VorticityFn& shear() {
  static VorticityFn v = make_vorticity(VorticitySpec::constant(0.5));
  return v;
}

void BM_Depth(benchmark::State& state) {
  const VorticityFn& v = shear();
  for (auto _ : state) {
    benchmark::DoNotOptimize(depth(v, 1.5));
  }
}
BENCHMARK(BM_Depth);

void BM_CriticalData(benchmark::State& state) {
  const VorticityFn& v = shear();
  for (auto _ : state) {
    benchmark::DoNotOptimize(critical_data(v));
  }
}
BENCHMARK(BM_CriticalData);

void BM_LeastEigenvalue(benchmark::State& state) {
  const VorticityFn& v = shear();
  for (auto _ : state) {
    benchmark::DoNotOptimize(least_eigenvalue(v, 1.5));
  }
}
BENCHMARK(BM_LeastEigenvalue);

void BM_ResidualAssembly(benchmark::State& state) {
  const VorticityFn& v = shear();
  CriticalData cd = critical_data(v);
  double r = cd.rC + 0.01;
  ConjugatePair cj = conjugate_streams(v, r, cd);
  DiscreteStreamColumn col =
      discrete_stream_column(v, r, cj.lambdaPlus, int(state.range(0)));
  WaveGrid g = replicate_column(col, 2.0, 4 * int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_residual(g, v));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ResidualAssembly)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void BM_NewtonSeedSolve(benchmark::State& state) {
  const VorticityFn& v = shear();
  CriticalData cd = critical_data(v);
  double r = cd.rC + 0.01;
  SeedOptions sopt;
  sopt.np = 16;
  sopt.nq = 64;
  WaveGrid seed = seed_stokes(v, r, cd, sopt);
  for (auto _ : state) {
    WaveGrid g = seed;
    NewtonOptions nopt;
    nopt.fixLambda = false;
    nopt.crestTarget = seed.crest();
    benchmark::DoNotOptimize(newton_solve(g, v, nopt));
  }
}
BENCHMARK(BM_NewtonSeedSolve);

}  // namespace

BENCHMARK_MAIN();
