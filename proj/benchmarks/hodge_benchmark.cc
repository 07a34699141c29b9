// Copyright 2026 The hrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "hrank/comparison_graph.h"
#include "hrank/hodge.h"
#include "hrank/rng.h"
#include "hrank/sampling.h"
#include "hrank/topology.h"

namespace hrank {
namespace {

ComparisonGraph random_comparisons(int n, int records) {
  ComparisonGraph g(n);
  Rng rng(7);
  for (int r = 0; r < records; ++r) {
    const ItemPair p = random_select(n, rng);
    g.add_comparison(static_cast<int>(rng.uniform_index(10)), p.i, p.j,
                     rng.uniform() < 0.5 ? 1 : -1);
  }
  return g;
}

void BM_Decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComparisonGraph g = random_comparisons(n, 3 * n * (n - 1) / 2);
  const EdgeFlow y = g.observed_flow();
  for (auto _ : state) benchmark::DoNotOptimize(decompose(g, y));
}
BENCHMARK(BM_Decompose)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_GlobalScoreRidge(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComparisonGraph g = random_comparisons(n, 3 * n * (n - 1) / 2);
  const EdgeFlow y = g.observed_flow();
  for (auto _ : state) benchmark::DoNotOptimize(global_score(g, y, {0.01, 1.0}));
}
BENCHMARK(BM_GlobalScoreRidge)->Arg(16)->Arg(64);

void BM_TrackFiltration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComparisonGraph g = random_comparisons(n, n * (n - 1) / 2);
  const std::vector<Simplex> stream = filtration(g);
  for (auto _ : state) benchmark::DoNotOptimize(track(stream));
}
BENCHMARK(BM_TrackFiltration)->Arg(16)->Arg(32);

}  // namespace
}  // namespace hrank
