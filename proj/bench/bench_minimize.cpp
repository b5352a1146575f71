// SPDX-License-Identifier: Apache-2.0

// Serial vs OpenMP acceptability scan over all candidate vectors.

#include <benchmark/benchmark.h>

#include <random>

#include "secrisk/minimize.hpp"

using namespace secrisk;
using namespace secrisk::minimize;

namespace {

Problem make_problem(int floor, int scenarios) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> rank(3, 5);
  std::bernoulli_distribution helps(0.5);
  Problem p;
  p.floor = floor;
  p.acceptable_cells.assign(25, 0);
  for (int i = 0; i < 5; ++i) {
    for (int l = 0; l < 5; ++l) p.acceptable_cells[static_cast<std::size_t>(i * 5 + l)] = (l + i <= 3) ? 1 : 0;
  }
  for (int k = 0; k < scenarios; ++k) {
    ScenarioTable t;
    t.likelihood = rank(rng);
    t.impact = rank(rng);
    for (std::size_t fr = 0; fr < kRequirementCount; ++fr) {
      int lr = 0;
      int ir = 0;
      for (std::size_t lv = 1; lv <= 4; ++lv) {
        lr += helps(rng) ? 1 : 0;
        if (lv == 4) ir += helps(rng) ? 1 : 0;
        t.likelihood_reduction[fr][lv] = lr / 2;
        t.impact_reduction[fr][lv] = ir;
      }
    }
    p.scenarios.push_back(t);
  }
  return p;
}

void BM_ScanSerial(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_serial(p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(candidate_count(p.floor)));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_parallel(p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(candidate_count(p.floor)));
}

void BM_MinimalElements(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto mask = scan_serial(p);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_elements(mask, p.floor));
}

}  // namespace

// Args: floor (1 = safety floor on, 16384 candidates; 0 = off, 78125), scenario count.
BENCHMARK(BM_ScanSerial)->Args({1, 3})->Args({1, 32})->Args({0, 32})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanParallel)->Args({1, 3})->Args({1, 32})->Args({0, 32})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MinimalElements)->Args({1, 32})->Args({0, 32})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
