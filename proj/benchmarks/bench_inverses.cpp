#include <benchmark/benchmark.h>

#include "wginv/wginv.hpp"

namespace {

using wginv::ComplexMatrix;

wginv::GroundTruth make_pair(Eigen::Index core, Eigen::Index nil) {
  wginv::GeneratorSpec spec;
  spec.core_dim = core;
  spec.nil_dim_x = nil;
  spec.nil_dim_y = nil;
  return wginv::generate_pair(spec, 42);
}

void BM_MoorePenrose(benchmark::State& state) {
  const auto gt = make_pair(state.range(0), 2);
  const wginv::NumericContext ctx;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wginv::moore_penrose(gt.A, ctx));
  }
}
BENCHMARK(BM_MoorePenrose)->Arg(4)->Arg(8)->Arg(16);

void BM_Drazin(benchmark::State& state) {
  const auto gt = make_pair(state.range(0), 2);
  const ComplexMatrix AW = gt.A * gt.W;
  const wginv::NumericContext ctx;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wginv::drazin(AW, ctx));
  }
}
BENCHMARK(BM_Drazin)->Arg(4)->Arg(8)->Arg(16);

void BM_WeightedWeakGroup(benchmark::State& state) {
  const auto gt = make_pair(state.range(0), 2);
  const wginv::NumericContext ctx;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wginv::weighted_weak_group(gt.A, gt.W, ctx));
  }
}
BENCHMARK(BM_WeightedWeakGroup)->Arg(4)->Arg(8)->Arg(16);

void BM_Routes(benchmark::State& state) {
  const auto gt = make_pair(state.range(0), 2);
  const wginv::NumericContext ctx;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wginv::wwg_representations(gt.A, gt.W, ctx));
  }
}
BENCHMARK(BM_Routes)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
