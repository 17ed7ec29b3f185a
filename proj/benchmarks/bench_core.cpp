// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "dyadic/experiment.hpp"
#include "dyadic/lerner.hpp"
#include "dyadic/rng.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/testing.hpp"
#include "dyadic/weight.hpp"

namespace {

using namespace dyadic;

GridFunction random_function(const Grid& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> vals(grid.cell_count());
  for (double& v : vals) v = rng.uniform(-1.0, 1.0);
  return GridFunction(grid, std::move(vals));
}

HaarShift family_shift(const Grid& grid, int offset) {
  const GridFunction f = random_function(grid, 1234);
  return positive_shift_from_family(
      grid, sparse_decomposition(f, grid.root()).flattened(), offset);
}

void BM_shift_apply(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)));
  const HaarShift shift = family_shift(grid, 2);
  const GridFunction f = random_function(grid, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shift.apply(f));
  }
}
BENCHMARK(BM_shift_apply)->Arg(8)->Arg(10)->Arg(12);

void BM_maximal_truncation(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)));
  const HaarShift shift = family_shift(grid, 2);
  const GridFunction f = random_function(grid, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shift.maximal_truncation(f));
  }
}
BENCHMARK(BM_maximal_truncation)->Arg(8)->Arg(10)->Arg(12);

void BM_ainfty(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)));
  const Weight w = generate_weight(
      {.kind = WeightSpec::Kind::power, .alpha = 0.9}, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ainfty(w));
  }
}
BENCHMARK(BM_ainfty)->Arg(8)->Arg(10)->Arg(12);

void BM_sparse_decomposition(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)));
  const GridFunction f = random_function(grid, 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sparse_decomposition(f, grid.root()));
  }
}
BENCHMARK(BM_sparse_decomposition)->Arg(8)->Arg(10)->Arg(12);

void BM_local_sharp_maximal(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)));
  const GridFunction f = random_function(grid, 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_sharp_maximal(f, grid.root(), 0.25));
  }
}
BENCHMARK(BM_local_sharp_maximal)->Arg(8)->Arg(10);

void BM_principal_forests(benchmark::State& state) {
  const Grid grid(1, static_cast<int>(state.range(0)));
  SplitMix64 rng(5);
  std::vector<double> wv(grid.cell_count()), sv(grid.cell_count());
  for (double& v : wv) v = std::exp(rng.uniform(-2.0, 2.0));
  for (double& v : sv) v = std::exp(rng.uniform(-2.0, 2.0));
  const Weight w{GridFunction(grid, std::move(wv))};
  const Weight sigma{GridFunction(grid, std::move(sv))};
  std::vector<Cube> cubes;
  for (std::size_t id = 0; id < grid.cube_count(); ++id) {
    cubes.push_back(grid.cube_from_id(id));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_principal_forest(cubes, w, sigma, 2.0));
  }
}
BENCHMARK(BM_principal_forests)->Arg(8)->Arg(10)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
