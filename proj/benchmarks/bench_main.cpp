// Copyright 2026 The rankone Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "rankone/rankone.hpp"

namespace {

using namespace rankone;

ObservationPattern random_pattern(std::vector<std::size_t> dims, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<MultiIndex> cells;
  while (cells.size() < m) {
    MultiIndex idx;
    for (auto n : dims) idx.push_back(1 + rng() % n);
    cells.insert(idx);
  }
  return ObservationPattern(std::move(dims), {cells.begin(), cells.end()});
}

PartialTensor unit_tensor(const ObservationPattern& p, long den, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<MultiIndex, PolarScalar>> entries;
  for (const auto& idx : p.indices())
    entries.emplace_back(idx, PolarScalar::make(Rational(1), Rational(static_cast<long>(rng() % den), den)));
  return PartialTensor::exact(p.dims(), std::move(entries));
}

void BM_Gf2Solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  linalg::Gf2Matrix a(n, n);
  linalg::BitVector b(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a.set(r, c, rng() & 1);
    b[r] = rng() & 1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(linalg::gf2_solve(a, b));
}
BENCHMARK(BM_Gf2Solve)->Arg(64)->Arg(256)->Arg(1024);

void BM_IndependentRows50Cubed(benchmark::State& state) {
  auto a = DesignMatrix(random_pattern({50, 50, 50}, static_cast<std::size_t>(state.range(0)), 2)).integer_matrix();
  for (auto _ : state) benchmark::DoNotOptimize(linalg::independent_rows(a));
}
BENCHMARK(BM_IndependentRows50Cubed)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AnalyzeReal50Cubed(benchmark::State& state) {
  auto t = unit_tensor(random_pattern({50, 50, 50}, 10000, 3), 2, 4);
  RealSolveOptions opts;
  opts.enumeration_cap_bits = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_real(t, opts));
}
BENCHMARK(BM_AnalyzeReal50Cubed)->Unit(benchmark::kMillisecond);

void BM_IntegerSmith(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = DesignMatrix(random_pattern({n, n, n}, 3 * n, 5)).integer_matrix();
  for (auto _ : state) benchmark::DoNotOptimize(linalg::integer_smith(a));
}
BENCHMARK(BM_IntegerSmith)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_CountComplex(benchmark::State& state) {
  auto t = unit_tensor(random_pattern({20, 20, 20}, static_cast<std::size_t>(state.range(0)), 6), 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(count_complex(t));
}
BENCHMARK(BM_CountComplex)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_BruteForceSigma(benchmark::State& state) {
  auto t = unit_tensor(random_pattern({4, 4, 4}, static_cast<std::size_t>(state.range(0)), 8), 1, 9);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_sigma(t, 16));
}
BENCHMARK(BM_BruteForceSigma)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FitTable5Like(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto p = random_pattern({n, n, n}, 6 * n, 10);
  if (!analyze_pattern(p).condition_a) {
    state.SkipWithError("pattern violates condition (A)");
    return;
  }
  auto t = generate_noisy(RankOneFactors::ones(p.dims()), p, NoiseSpec{0.1, 11});
  for (auto _ : state) benchmark::DoNotOptimize(fit_least_squares(t));
}
BENCHMARK(BM_FitTable5Like)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
