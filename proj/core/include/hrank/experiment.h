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

#ifndef HRANK_EXPERIMENT_H_
#define HRANK_EXPERIMENT_H_

// Simulation study driver: draw a ground truth, spend a comparison budget
// under a sampling policy, estimate scores with HodgeRank and record how close
// the estimate is to the truth along the way.
//
// Every replication is a pure function of (config, policy, replication index):
// the ground truth comes from stream derive_seed(seed, {kTruthStream, rep})
// and is shared by all policies, while pair choices, voters and labels come
// from derive_seed(seed, {kSamplingStream, policy, rep}).

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hrank/comparison_graph.h"
#include "hrank/glm.h"
#include "hrank/sampling.h"
#include "hrank/topology.h"

namespace hrank {

inline constexpr std::uint64_t kTruthStream = 1;
inline constexpr std::uint64_t kSamplingStream = 2;

enum class Estimator {
  kRidge,    // (L + gamma I)^{-1} D0^T y
  kMinNorm,  // L^+ D0^T y
};
Estimator parse_estimator(std::string_view name);
std::string_view estimator_name(Estimator estimator);

enum class Metric { kKendallTau, kFiedlerValue, kBeta0, kBeta1, kWallclock };
Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric metric);

struct ExperimentConfig {
  int n = 16;
  std::int64_t budget = 120;
  std::vector<Policy> schemes = {Policy::kRandom, Policy::kUnsupervised,
                                 Policy::kSupervised};
  LinkKind link = LinkKind::kUniform;
  double gamma = 0.01;
  double sigma_eps = 1.0;
  int replications = 1;
  std::uint64_t seed = 0;
  // Kendall tau checkpoints; empty selects default_checkpoints().
  std::vector<std::int64_t> eval_grid;
  // Size of the simulated crowd; each comparison goes to a uniformly drawn
  // voter.
  int voters = 100;
  // Estimator for the random and unsupervised policies. The supervised policy
  // always reports its posterior mean.
  Estimator estimator = Estimator::kRidge;
  // Labels are sign(x*_i - x*_j) instead of draws from the link.
  bool noise_free = false;
  // Supervised policy recomputes everything densely each step instead of
  // using rank-1 updates. Same trajectory, much slower.
  bool offline_supervised = false;
  // Adds a wallclock row per replication. Off by default because it is the
  // only non-reproducible value in a result table.
  bool record_wallclock = false;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  std::vector<std::int64_t> checkpoints() const;
};

// Every K/10 comparisons (K = n(n-1)/2) from ceil(K ln(n) / n), plus the
// final budget.
std::vector<std::int64_t> default_checkpoints(int n, std::int64_t budget);

struct ResultRow {
  int replication = 0;
  Policy scheme = Policy::kRandom;
  std::int64_t step = 0;
  Metric metric = Metric::kKendallTau;
  double value = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

struct ReplicationOutput {
  Policy scheme = Policy::kRandom;
  int replication = 0;
  ResultTable table;
  ScoreVector ground_truth;
  // Score estimate at each checkpoint.
  std::vector<ScoreVector> estimates;
  // Times each pair was sampled, indexed by pair_index.
  std::vector<std::int64_t> pair_counts;
  TopologyTimeline timeline;
  double wallclock_seconds = 0;
};

// Tau-a: (concordant - discordant) / C(n, 2); ties count as neither.
// Throws std::invalid_argument on length mismatch or length < 2.
double kendall_tau(const ScoreVector& a, const ScoreVector& b);

// Pearson correlation of mid-ranks. Returns 0 when either input is constant.
double spearman_rho(std::span<const double> a, std::span<const double> b);

ReplicationOutput run_replication(const ExperimentConfig& cfg, Policy scheme,
                                  int replication);

// All (scheme, replication) units, ordered by scheme (config order) then
// replication. Runs up to `threads` units concurrently.
std::vector<ReplicationOutput> run_experiment(const ExperimentConfig& cfg,
                                              int threads = 1);

// Rows of all outputs in order.
ResultTable collect_rows(std::span<const ReplicationOutput> outputs);

struct BudgetHistogram {
  std::vector<ItemPair> pairs;
  // 1 - |x*_i - x*_j|.
  std::vector<double> ambiguity;
  std::vector<double> mean_count;
  ScoreVector ground_truth;
};

// One ground truth, cfg.replications supervised runs over it; mean number of
// labels spent on each pair.
BudgetHistogram budget_histogram(const ExperimentConfig& cfg, int threads = 1);

struct CurvePoint {
  Policy scheme = Policy::kRandom;
  Metric metric = Metric::kKendallTau;
  std::int64_t step = 0;
  double mean = 0;
  // Population standard deviation.
  double stddev = 0;
  int count = 0;
};

// Ensemble statistics per (scheme, metric, step), sorted by those keys.
// Throws std::invalid_argument when replications of a scheme report
// different (metric, step) sets.
std::vector<CurvePoint> aggregate(std::span<const ResultTable> tables);

// Thread count from HRANK_THREADS capped by the hardware; at least 1.
int default_thread_count();

}  // namespace hrank

#endif  // HRANK_EXPERIMENT_H_
