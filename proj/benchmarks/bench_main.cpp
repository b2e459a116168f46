#include <benchmark/benchmark.h>

#include "wfd/closure.hpp"
#include "wfd/covering.hpp"

using namespace wfd;

namespace {

void BM_BarySubdivision(benchmark::State& state) {
  Complex tri = build_complex({{"a", "b", "c"}});
  unsigned depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bary_t(tri, depth));
  }
}
BENCHMARK(BM_BarySubdivision)->Arg(1)->Arg(2)->Arg(3);

void BM_ZeroRoundHexagon(benchmark::State& state) {
  ColorlessTask hx = gen_hexagon();
  for (auto _ : state) {
    benchmark::DoNotOptimize(zero_round_solvable(hx, 2));
  }
}
BENCHMARK(BM_ZeroRoundHexagon);

void BM_ClosureFixedPointEps(benchmark::State& state) {
  ColorlessTask t = gen_epsilon_agreement(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fixed_point(t));
  }
}
BENCHMARK(BM_ClosureFixedPointEps)->Arg(4)->Arg(8)->Arg(16);

void BM_DecideEps(benchmark::State& state) {
  ColorlessTask t = gen_epsilon_agreement(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide(t, 2));
  }
}
BENCHMARK(BM_DecideEps)->Arg(4)->Arg(8);

void BM_LocalTaskSearch(benchmark::State& state) {
  ColorlessTask sa = gen_set_agreement(static_cast<int>(state.range(0)));
  std::vector<std::string> all;
  for (int i = 1; i <= state.range(0); ++i) all.push_back(std::to_string(i));
  Simplex full = Simplex::from_labels(all);
  for (auto _ : state) {
    benchmark::DoNotOptimize(one_round_local_solvable(sa, full, full));
  }
}
BENCHMARK(BM_LocalTaskSearch)->Arg(3)->Arg(4);

void BM_CoveringValidation(benchmark::State& state) {
  CoveringCandidate c = gen_cyclic_cover(5, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_covering(c));
  }
}
BENCHMARK(BM_CoveringValidation)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
