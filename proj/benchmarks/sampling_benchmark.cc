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

#include "hrank/glm.h"
#include "hrank/rng.h"
#include "hrank/sampling.h"

namespace hrank {
namespace {

PosteriorState warm_posterior(int n) {
  PosteriorState s = PosteriorState::prior(n, {0.01, 1.0});
  Rng rng(1);
  for (int t = 0; t < 2 * n; ++t) {
    posterior_update(s, random_select(n, rng), rng.uniform() < 0.5 ? 1 : -1);
  }
  return s;
}

void BM_SupervisedSelect(benchmark::State& state) {
  const PosteriorState s = warm_posterior(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(supervised_select(s, LinkKind::kUniform));
  }
}
BENCHMARK(BM_SupervisedSelect)->Arg(16)->Arg(32)->Arg(64);

void BM_PosteriorUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PosteriorState s = warm_posterior(n);
  Rng rng(2);
  for (auto _ : state) {
    posterior_update(s, random_select(n, rng), 1.0);
  }
}
BENCHMARK(BM_PosteriorUpdate)->Arg(16)->Arg(32)->Arg(64);

// One full online supervised trajectory against the dense per-step variant.
void BM_OnlineTrajectory(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PosteriorState s = PosteriorState::prior(n, {0.01, 1.0});
    for (std::int64_t t = 0; t < num_pairs(n); ++t) {
      posterior_update(s, supervised_select(s, LinkKind::kUniform), 1.0);
    }
    benchmark::DoNotOptimize(s.mean.data());
  }
}
BENCHMARK(BM_OnlineTrajectory)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_OfflineTrajectory(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    OfflineSupervisedSampler sampler(n, {0.01, 1.0});
    for (std::int64_t t = 0; t < num_pairs(n); ++t) {
      sampler.observe(sampler.select(LinkKind::kUniform), 1.0);
    }
    benchmark::DoNotOptimize(sampler.posterior().mean.data());
  }
}
BENCHMARK(BM_OfflineTrajectory)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FiedlerUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FiedlerState s = FiedlerState::from_laplacian(Eigen::MatrixXd::Zero(n, n));
  Rng rng(3);
  for (auto _ : state) {
    fiedler_update(s, random_select(n, rng));
    benchmark::DoNotOptimize(unsupervised_select(s));
  }
}
BENCHMARK(BM_FiedlerUpdate)->Arg(16)->Arg(32)->Arg(64);

}  // namespace
}  // namespace hrank
