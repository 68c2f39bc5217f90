#include <benchmark/benchmark.h>

#include "moat/pareto.hpp"
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

void BM_filter_pairwise(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moat::detail::nondominated_pairwise(pts));
  }
}
BENCHMARK(BM_filter_pairwise)
    ->Args({100, 2})
    ->Args({1000, 2})
    ->Args({1000, 3})
    ->Args({1000, 5});

void BM_filter_sweep(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moat::detail::nondominated_sweep(pts));
  }
}
BENCHMARK(BM_filter_sweep)
    ->Args({1000, 2})
    ->Args({10000, 2})
    ->Args({10000, 3})
    ->Args({100000, 2});

void BM_archive_offer(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2, 7);
  for (auto _ : state) {
    moat::ParetoArchive archive;
    for (const auto& p : pts) archive.offer(p);
    benchmark::DoNotOptimize(archive.size());
  }
}
BENCHMARK(BM_archive_offer)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
