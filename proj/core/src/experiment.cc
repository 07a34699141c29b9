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

#include "hrank/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>

#include "hrank/hodge.h"

namespace hrank {
namespace {

void require(bool ok, const std::string& field, const std::string& reason) {
  if (!ok) throw std::invalid_argument(field + ": " + reason);
}

struct TrajectoryOptions {
  bool per_step_metrics = true;
};

// One sampling run against a fixed ground truth.
ReplicationOutput run_trajectory(const ExperimentConfig& cfg, Policy scheme,
                                 int replication, const ScoreVector& truth,
                                 const TrajectoryOptions& options) {
  using Clock = std::chrono::steady_clock;

  const int n = cfg.n;
  const RidgeConfig ridge{cfg.gamma, cfg.sigma_eps};
  Rng rng(derive_seed(cfg.seed, {kSamplingStream,
                                 static_cast<std::uint64_t>(scheme),
                                 static_cast<std::uint64_t>(replication)}));

  ReplicationOutput out;
  out.scheme = scheme;
  out.replication = replication;
  out.ground_truth = truth;
  out.pair_counts.assign(static_cast<std::size_t>(num_pairs(n)), 0);

  ComparisonGraph graph(n, ValueMode::kBinary);
  TopologyTracker tracker;
  tracker.add_vertices(n);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);

  std::optional<FiedlerState> fiedler_state;
  std::optional<PosteriorState> posterior;
  std::optional<OfflineSupervisedSampler> offline;
  if (scheme == Policy::kUnsupervised) {
    fiedler_state = FiedlerState::from_laplacian(lap);
  } else if (scheme == Policy::kSupervised) {
    if (cfg.offline_supervised) {
      offline.emplace(n, ridge);
    } else {
      posterior = PosteriorState::prior(n, ridge);
    }
  }

  const std::vector<std::int64_t> checkpoints = cfg.checkpoints();
  std::size_t next_checkpoint = 0;
  Clock::duration elapsed{};
  auto emit = [&](std::int64_t step, Metric metric, double value) {
    out.table.rows.push_back({replication, scheme, step, metric, value});
  };

  for (std::int64_t t = 1; t <= cfg.budget; ++t) {
    const auto start = Clock::now();
    ItemPair pair;
    switch (scheme) {
      case Policy::kRandom:
        pair = random_select(n, rng);
        break;
      case Policy::kUnsupervised:
        pair = unsupervised_select(*fiedler_state);
        break;
      case Policy::kSupervised:
        pair = offline ? offline->select(cfg.link)
                       : supervised_select(*posterior, cfg.link);
        break;
    }
    const auto voter = static_cast<VoterId>(
        rng.uniform_index(static_cast<std::uint64_t>(cfg.voters)));
    const int label =
        cfg.noise_free
            ? (truth[pair.i] >= truth[pair.j] ? 1 : -1)
            : sample_label(cfg.link, truth, pair.i, pair.j, rng);
    const AddResult added = graph.add_comparison(voter, pair.i, pair.j, label);
    if (fiedler_state) fiedler_update(*fiedler_state, pair);
    if (posterior) posterior_update(*posterior, pair, label);
    if (offline) offline->observe(pair, label);
    elapsed += Clock::now() - start;

    ++out.pair_counts[static_cast<std::size_t>(pair_index(n, pair))];
    add_pair_laplacian(lap, pair.i, pair.j);
    tracker.observe(graph, added);

    if (options.per_step_metrics) {
      const double lambda2 =
          fiedler_state ? fiedler_state->fiedler_value : fiedler(lap).value;
      const BettiNumbers betti = tracker.betti();
      emit(t, Metric::kFiedlerValue, lambda2);
      emit(t, Metric::kBeta0, betti.beta0);
      emit(t, Metric::kBeta1, betti.beta1);
    }

    if (next_checkpoint < checkpoints.size() &&
        checkpoints[next_checkpoint] == t) {
      ++next_checkpoint;
      ScoreVector estimate;
      if (posterior) {
        estimate = posterior->mean;
      } else if (offline) {
        estimate = offline->posterior().mean;
      } else {
        RidgeConfig est = ridge;
        if (cfg.estimator == Estimator::kMinNorm) est.gamma = 0.0;
        estimate = global_score(graph, graph.observed_flow(), est).x;
      }
      emit(t, Metric::kKendallTau, kendall_tau(estimate, truth));
      out.estimates.push_back(std::move(estimate));
    }
  }

  out.wallclock_seconds = std::chrono::duration<double>(elapsed).count();
  if (cfg.record_wallclock) {
    emit(cfg.budget, Metric::kWallclock, out.wallclock_seconds);
  }
  out.timeline = tracker.timeline();
  return out;
}

ScoreVector replication_truth(const ExperimentConfig& cfg, int replication) {
  Rng rng(derive_seed(cfg.seed, {kTruthStream,
                                 static_cast<std::uint64_t>(replication)}));
  return generate_ground_truth(cfg.n, rng);
}

// Runs fn(unit) for unit in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int u = 0; u < count; ++u) fn(u);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (int u = next++; u < count; u = next++) {
        try {
          fn(u);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> mid_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo;
    while (hi + 1 < order.size() && v[order[hi + 1]] == v[order[lo]]) ++hi;
    const double rank = (static_cast<double>(lo) + hi) / 2.0 + 1.0;
    for (std::size_t k = lo; k <= hi; ++k) ranks[order[k]] = rank;
    lo = hi + 1;
  }
  return ranks;
}

}  // namespace

Estimator parse_estimator(std::string_view name) {
  if (name == "ridge") return Estimator::kRidge;
  if (name == "min-norm") return Estimator::kMinNorm;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

std::string_view estimator_name(Estimator estimator) {
  return estimator == Estimator::kRidge ? "ridge" : "min-norm";
}

Metric parse_metric(std::string_view name) {
  if (name == "kendall_tau") return Metric::kKendallTau;
  if (name == "fiedler_value") return Metric::kFiedlerValue;
  if (name == "beta0") return Metric::kBeta0;
  if (name == "beta1") return Metric::kBeta1;
  if (name == "wallclock") return Metric::kWallclock;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::kKendallTau:
      return "kendall_tau";
    case Metric::kFiedlerValue:
      return "fiedler_value";
    case Metric::kBeta0:
      return "beta0";
    case Metric::kBeta1:
      return "beta1";
    case Metric::kWallclock:
      return "wallclock";
  }
  throw std::invalid_argument("unknown metric");
}

std::vector<std::int64_t> default_checkpoints(int n, std::int64_t budget) {
  const std::int64_t pairs = num_pairs(n);
  const std::int64_t stride = std::max<std::int64_t>(1, pairs / 10);
  const auto start = static_cast<std::int64_t>(
      std::ceil(pairs * std::log(static_cast<double>(n)) / n));
  std::vector<std::int64_t> grid;
  for (std::int64_t s = std::max<std::int64_t>(start, 1); s <= budget;
       s += stride) {
    grid.push_back(s);
  }
  if (grid.empty() || grid.back() != budget) grid.push_back(budget);
  return grid;
}

void ExperimentConfig::validate() const {
  require(n >= 2, "n", "must be >= 2");
  require(budget >= 1, "budget", "must be >= 1");
  require(replications >= 1, "replications", "must be >= 1");
  require(voters >= 1, "voters", "must be >= 1");
  require(gamma >= 0.0, "gamma", "must be >= 0");
  require(sigma_eps > 0.0, "sigma_eps", "must be > 0");
  require(!schemes.empty(), "schemes", "must not be empty");
  std::set<Policy> seen;
  for (Policy p : schemes) {
    require(seen.insert(p).second, "schemes",
            "duplicate scheme '" + std::string(policy_name(p)) + "'");
  }
  if (seen.contains(Policy::kSupervised)) {
    require(gamma > 0.0, "gamma", "must be > 0 for the supervised scheme");
  }
  if (estimator == Estimator::kRidge && gamma == 0.0) {
    require(false, "gamma", "must be > 0 for the ridge estimator");
  }
  for (std::size_t k = 0; k < eval_grid.size(); ++k) {
    require(eval_grid[k] >= 1 && eval_grid[k] <= budget, "eval_grid",
            "checkpoints must lie in [1, budget]");
    require(k == 0 || eval_grid[k] > eval_grid[k - 1], "eval_grid",
            "checkpoints must be strictly increasing");
  }
}

std::vector<std::int64_t> ExperimentConfig::checkpoints() const {
  return eval_grid.empty() ? default_checkpoints(n, budget) : eval_grid;
}

double kendall_tau(const ScoreVector& a, const ScoreVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("kendall_tau: length mismatch");
  }
  const Eigen::Index n = a.size();
  if (n < 2) throw std::invalid_argument("kendall_tau: need length >= 2");
  std::int64_t score = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = (a[i] - a[j]) * (b[i] - b[j]);
      score += (s > 0) - (s < 0);
    }
  }
  return static_cast<double>(score) / (static_cast<double>(n) * (n - 1) / 2.0);
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spearman_rho: length mismatch");
  }
  const std::vector<double> ra = mid_ranks(a);
  const std::vector<double> rb = mid_ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t k = 0; k < ra.size(); ++k) {
    sab += (ra[k] - mean) * (rb[k] - mean);
    saa += (ra[k] - mean) * (ra[k] - mean);
    sbb += (rb[k] - mean) * (rb[k] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

ReplicationOutput run_replication(const ExperimentConfig& cfg, Policy scheme,
                                  int replication) {
  cfg.validate();
  return run_trajectory(cfg, scheme, replication,
                        replication_truth(cfg, replication), {});
}

std::vector<ReplicationOutput> run_experiment(const ExperimentConfig& cfg,
                                              int threads) {
  cfg.validate();
  const int reps = cfg.replications;
  const int units = static_cast<int>(cfg.schemes.size()) * reps;
  std::vector<ReplicationOutput> outputs(units);
  parallel_for(units, threads, [&](int u) {
    const Policy scheme = cfg.schemes[u / reps];
    const int rep = u % reps;
    outputs[u] =
        run_trajectory(cfg, scheme, rep, replication_truth(cfg, rep), {});
  });
  return outputs;
}

ResultTable collect_rows(std::span<const ReplicationOutput> outputs) {
  ResultTable table;
  for (const ReplicationOutput& o : outputs) {
    table.rows.insert(table.rows.end(), o.table.rows.begin(),
                      o.table.rows.end());
  }
  return table;
}

BudgetHistogram budget_histogram(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  if (std::find(cfg.schemes.begin(), cfg.schemes.end(), Policy::kSupervised) ==
      cfg.schemes.end()) {
    throw std::invalid_argument(
        "budget_histogram: config must include the supervised scheme");
  }
  BudgetHistogram hist;
  hist.ground_truth = replication_truth(cfg, 0);
  const std::int64_t pairs = num_pairs(cfg.n);

  std::vector<std::vector<std::int64_t>> counts(cfg.replications);
  parallel_for(cfg.replications, threads, [&](int rep) {
    counts[rep] = run_trajectory(cfg, Policy::kSupervised, rep,
                                 hist.ground_truth, {.per_step_metrics = false})
                      .pair_counts;
  });

  for (std::int64_t k = 0; k < pairs; ++k) {
    const ItemPair p = pair_from_index(cfg.n, k);
    double total = 0;
    for (const auto& c : counts) total += static_cast<double>(c[k]);
    hist.pairs.push_back(p);
    hist.ambiguity.push_back(
        1.0 - std::abs(hist.ground_truth[p.i] - hist.ground_truth[p.j]));
    hist.mean_count.push_back(total / cfg.replications);
  }
  return hist;
}

std::vector<CurvePoint> aggregate(std::span<const ResultTable> tables) {
  using Key = std::tuple<Policy, Metric, std::int64_t>;
  std::map<Key, std::vector<double>> values;
  // (table, scheme, replication) -> (metric, step) keys it reported.
  std::map<std::tuple<std::size_t, Policy, int>,
           std::set<std::pair<Metric, std::int64_t>>>
      coverage;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    for (const ResultRow& row : tables[t].rows) {
      values[{row.scheme, row.metric, row.step}].push_back(row.value);
      coverage[{t, row.scheme, row.replication}].insert({row.metric, row.step});
    }
  }
  std::map<Policy, const std::set<std::pair<Metric, std::int64_t>>*> reference;
  for (const auto& [key, keys] : coverage) {
    const Policy scheme = std::get<1>(key);
    auto [it, inserted] = reference.emplace(scheme, &keys);
    if (!inserted && *it->second != keys) {
      throw std::invalid_argument(
          "aggregate: checkpoint mismatch between replications of scheme '" +
          std::string(policy_name(scheme)) + "'");
    }
  }

  std::vector<CurvePoint> out;
  for (const auto& [key, v] : values) {
    CurvePoint p;
    std::tie(p.scheme, p.metric, p.step) = key;
    p.count = static_cast<int>(v.size());
    p.mean = std::accumulate(v.begin(), v.end(), 0.0) / p.count;
    double ss = 0;
    for (double x : v) ss += (x - p.mean) * (x - p.mean);
    p.stddev = std::sqrt(ss / p.count);
    out.push_back(p);
  }
  return out;
}

int default_thread_count() {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  if (const char* env = std::getenv("HRANK_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return threads;
}

}  // namespace hrank
