#include <benchmark/benchmark.h>

#include "moat/algorithms.hpp"
#include "moat/anytime.hpp"
#include "moat/eaf.hpp"
#include "moat/indicators.hpp"
#include "moat/rng.hpp"

namespace {

moat::RunArchive make_run(std::int64_t budget, std::uint64_t seed) {
  const auto problem = moat::make_problem("ZDT1");
  moat::RunArchive archive;
  archive.meta.problem = "ZDT1";
  archive.meta.m = 2;
  archive.meta.algorithm = "random_search";
  archive.meta.budget = budget;
  moat::Rng rng(seed);
  moat::random_search(problem, budget, rng, [&](const moat::Solution& s) {
    moat::Solution trimmed;
    trimmed.eval_index = s.eval_index;
    trimmed.objectives = s.objectives;
    archive.records.push_back(std::move(trimmed));
  });
  return archive;
}

void BM_hv_trajectory(benchmark::State& state) {
  const auto run = make_run(state.range(0), 5);
  const auto grid = moat::make_budget_grid(1, state.range(0), 50,
                                           moat::GridScale::log);
  const auto bounds = moat::NormalizationBounds::identity(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moat::trajectory(
        run, moat::IndicatorSpec::hypervolume(), grid, bounds));
  }
}
BENCHMARK(BM_hv_trajectory)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_eaf(benchmark::State& state) {
  std::vector<std::vector<moat::ObjectiveVector>> runs;
  for (int r = 0; r < 10; ++r) {
    moat::Rng rng(100 + r);
    std::vector<moat::ObjectiveVector> pts(
        static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts) p = {rng.uniform01(), rng.uniform01()};
    runs.push_back(std::move(pts));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(moat::eaf(runs));
  }
}
BENCHMARK(BM_eaf)->Arg(100)->Arg(1000);

}  // namespace
