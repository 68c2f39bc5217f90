#include <benchmark/benchmark.h>

#include "moat/hypervolume.hpp"
#include "moat/rng.hpp"

namespace {

std::vector<moat::ObjectiveVector> random_points(std::size_t n, std::size_t m,
                                                 std::uint64_t seed) {
  moat::Rng rng(seed);
  std::vector<moat::ObjectiveVector> pts(n);
  for (auto& p : pts) {
    p.resize(m);
    for (auto& v : p) v = rng.uniform01();
  }
  return pts;
}

void BM_hv_sweep_2d(benchmark::State& state) {
  const auto pts =
      random_points(static_cast<std::size_t>(state.range(0)), 2, 3);
  const moat::ObjectiveVector ref(2, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moat::hv_detail::sweep_2d(pts, ref));
  }
}
BENCHMARK(BM_hv_sweep_2d)->Arg(100)->Arg(1000)->Arg(10000);

void BM_hv_sweep_3d(benchmark::State& state) {
  const auto pts =
      random_points(static_cast<std::size_t>(state.range(0)), 3, 3);
  const moat::ObjectiveVector ref(3, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moat::hv_detail::sweep_3d(pts, ref));
  }
}
BENCHMARK(BM_hv_sweep_3d)->Arg(100)->Arg(1000)->Arg(10000);

void BM_hv_recursive(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 3);
  const moat::ObjectiveVector ref(static_cast<std::size_t>(state.range(1)),
                                  1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moat::hv_detail::wfg_recursive(pts, ref));
  }
}
BENCHMARK(BM_hv_recursive)
    ->Args({50, 2})
    ->Args({50, 3})
    ->Args({30, 4})
    ->Args({20, 5});

}  // namespace
