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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hrank/experiment.h"
#include "hrank/hodge.h"
#include "hrank/sampling.h"
#include "hrank/topology.h"
#include "oracles.h"

namespace hrank {
namespace {

using testing::dense_coboundary;
using testing::dense_curl;
using testing::dense_gaussian_kl;
using testing::max_abs;
using testing::random_graph;
using testing::svd_min_norm;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// 1. Fraction of labels that disagree with the ground-truth order.
Verdict flip_rate() {
  const int n = 16;
  const int reps = 1000;
  const int labels_per_rep = 120;
  std::int64_t wrong = 0;
  std::int64_t total = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng truth_rng(derive_seed(101, {kTruthStream, static_cast<std::uint64_t>(rep)}));
    const ScoreVector x = generate_ground_truth(n, truth_rng);
    Rng rng(derive_seed(101, {kSamplingStream, static_cast<std::uint64_t>(rep)}));
    for (int t = 0; t < labels_per_rep; ++t) {
      const ItemPair p = random_select(n, rng);
      const int label = sample_label(LinkKind::kUniform, x, p.i, p.j, rng);
      wrong += (label > 0) != (x[p.i] > x[p.j]);
      ++total;
    }
  }
  const double rate = static_cast<double>(wrong) / static_cast<double>(total);
  return {rate >= 0.30 && rate <= 0.35,
          fmt("wrong-direction rate %.4f over %lld labels (want [0.30, 0.35])",
              rate, static_cast<long long>(total))};
}

// 2. Rank-1 posterior updates against per-step dense recomputation.
Verdict online_offline() {
  const int n = 16;
  const std::int64_t budget = num_pairs(n);
  const RidgeConfig cfg{0.01, 1.0};
  Rng truth_rng(derive_seed(202, {kTruthStream}));
  const ScoreVector x = generate_ground_truth(n, truth_rng);

  // Labels are drawn once so both trajectories see the same data.
  auto run_online = [&](std::vector<ItemPair>* pairs, double* max_err) {
    Rng rng(derive_seed(202, {kSamplingStream}));
    PosteriorState state = PosteriorState::prior(n, cfg);
    ComparisonGraph graph(n);
    for (std::int64_t t = 0; t < budget; ++t) {
      const ItemPair p = supervised_select(state, LinkKind::kUniform);
      const int y = sample_label(LinkKind::kUniform, x, p.i, p.j, rng);
      posterior_update(state, p, y);
      if (pairs) pairs->push_back(p);
      if (max_err) {
        graph.add_comparison(0, p.i, p.j, y);
        const PosteriorState offline =
            offline_posterior(graph, graph.observed_flow(), cfg);
        *max_err = std::max(*max_err, max_abs(state.mean - offline.mean));
      }
    }
    return state;
  };

  std::vector<ItemPair> online_pairs;
  double max_err = 0;
  run_online(&online_pairs, &max_err);

  const int timing_runs = 20;
  auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < timing_runs; ++k) run_online(nullptr, nullptr);
  const double online_time = seconds_since(start) / timing_runs;

  start = std::chrono::steady_clock::now();
  Rng rng(derive_seed(202, {kSamplingStream}));
  OfflineSupervisedSampler offline(n, cfg);
  bool same_pairs = true;
  for (std::int64_t t = 0; t < budget; ++t) {
    const ItemPair p = offline.select(LinkKind::kUniform);
    same_pairs = same_pairs && p == online_pairs[t];
    offline.observe(p, sample_label(LinkKind::kUniform, x, p.i, p.j, rng));
  }
  const double offline_time = seconds_since(start);
  const double ratio = offline_time / online_time;
  return {max_err < 1e-8 && ratio >= 10.0 && same_pairs,
          fmt("max |mu_online - mu_offline| = %.3g (want < 1e-8), offline/online "
              "time %.4fs/%.6fs = %.0fx (want >= 10x), same pairs: %s",
              max_err, offline_time, online_time, ratio,
              same_pairs ? "yes" : "no")};
}

// 3. Closed-form information gain against the dense Gaussian KL.
Verdict kl_consistency() {
  Rng rng(303);
  double worst = 0;
  int variant_disagrees = 0;
  const int triples = 1000;
  for (int k = 0; k < triples; ++k) {
    const int n = 2 + static_cast<int>(rng.uniform_index(7));
    const RidgeConfig cfg{0.05 + rng.uniform(), 0.5 + rng.uniform()};
    PosteriorState s = PosteriorState::prior(n, cfg);
    const int observations = static_cast<int>(rng.uniform_index(20));
    for (int o = 0; o < observations; ++o) {
      posterior_update(s, random_select(n, rng), rng.uniform() < 0.5 ? 1 : -1);
    }
    const ItemPair p = random_select(n, rng);
    const double y = rng.uniform() < 0.5 ? 1.0 : -1.0;
    PosteriorState next = s;
    posterior_update(next, p, y);
    const double dense =
        dense_gaussian_kl(next.mean, next.inverse.inverse(), s.mean,
                          s.inverse.inverse(), s.sigma_eps);
    worst = std::max(worst, std::abs(kl_step(s, p, y) - dense));

    // The same expression with ln(1 - C) in place of ln(1 + C).
    const double c = s.pair_variance(p);
    const double r = y - (s.mean[p.i] - s.mean[p.j]);
    const double sigma2 = s.sigma_eps * s.sigma_eps;
    const double variant = 0.5 * (r * r * c / (sigma2 * (1 + c) * (1 + c)) +
                                  std::log(1 - c) - c / (1 + c));
    if (!(std::abs(variant - dense) <= 1e-6)) ++variant_disagrees;
  }
  return {worst <= 1e-9 && variant_disagrees == triples,
          fmt("max |closed form - dense KL| = %.3g (want <= 1e-9); ln(1-C) "
              "variant disagrees on %d/%d triples",
              worst, variant_disagrees, triples)};
}

struct SimulationCurves {
  ExperimentConfig cfg;
  std::vector<CurvePoint> points;

  double mean(Policy scheme, Metric metric, std::int64_t step) const {
    for (const CurvePoint& p : points) {
      if (p.scheme == scheme && p.metric == metric && p.step == step) {
        return p.mean;
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  }
};

SimulationCurves simulate_reference_protocol() {
  SimulationCurves out;
  out.cfg.n = 16;
  out.cfg.budget = 3 * num_pairs(16);
  out.cfg.replications = 100;
  out.cfg.seed = 404;
  const auto outputs = run_experiment(out.cfg, default_thread_count());
  std::vector<ResultTable> tables;
  for (const ReplicationOutput& o : outputs) tables.push_back(o.table);
  out.points = aggregate(tables);
  return out;
}

// 4. Kendall tau ordering at every checkpoint.
Verdict sampling_efficiency(const SimulationCurves& sim) {
  const auto grid = sim.cfg.checkpoints();
  const std::int64_t middle = *std::min_element(
      grid.begin(), grid.end(), [&](std::int64_t a, std::int64_t b) {
        return std::abs(2 * a - sim.cfg.budget) < std::abs(2 * b - sim.cfg.budget);
      });
  bool ordered = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::int64_t step : grid) {
    const double r = sim.mean(Policy::kRandom, Metric::kKendallTau, step);
    for (Policy p : {Policy::kUnsupervised, Policy::kSupervised}) {
      const double margin = sim.mean(p, Metric::kKendallTau, step) - r;
      worst_margin = std::min(worst_margin, margin);
      if (!(margin >= 0)) ordered = false;
    }
  }
  const double gap = sim.mean(Policy::kSupervised, Metric::kKendallTau, middle) -
                     sim.mean(Policy::kRandom, Metric::kKendallTau, middle);
  return {ordered && gap >= 0.02,
          fmt("active >= random at all %zu checkpoints: %s (worst margin "
              "%.4f); supervised - random at step %lld = %.4f (want >= 0.02); "
              "final tau random/unsup/sup = %.4f/%.4f/%.4f",
              grid.size(), ordered ? "yes" : "no", worst_margin,
              static_cast<long long>(middle), gap,
              sim.mean(Policy::kRandom, Metric::kKendallTau, sim.cfg.budget),
              sim.mean(Policy::kUnsupervised, Metric::kKendallTau, sim.cfg.budget),
              sim.mean(Policy::kSupervised, Metric::kKendallTau, sim.cfg.budget))};
}

// 5. Mean algebraic connectivity under greedy Fiedler sampling.
Verdict fiedler_dominance(const SimulationCurves& sim) {
  // Disconnected graphs have lambda_2 = 0 up to eigensolver round-off.
  constexpr double kRoundOff = 1e-9;
  int violations = 0;
  std::int64_t first_violation = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::int64_t step = 1; step <= sim.cfg.budget; ++step) {
    const double margin =
        sim.mean(Policy::kUnsupervised, Metric::kFiedlerValue, step) -
        sim.mean(Policy::kRandom, Metric::kFiedlerValue, step);
    worst = std::min(worst, margin);
    if (!(margin >= -kRoundOff)) {
      if (violations++ == 0) first_violation = step;
    }
  }
  const std::string where =
      violations == 0 ? std::string()
                      : fmt(" (first at step %lld)",
                            static_cast<long long>(first_violation));
  return {violations == 0,
          fmt("unsupervised >= random at every step: %d violations%s, worst "
              "margin %.4g; final lambda2 random/unsup = %.3f/%.3f",
              violations, where.c_str(), worst,
              sim.mean(Policy::kRandom, Metric::kFiedlerValue, sim.cfg.budget),
              sim.mean(Policy::kUnsupervised, Metric::kFiedlerValue,
                       sim.cfg.budget))};
}

// First step at which the mean curve is back to zero after having been
// positive; 0 when it never leaves zero, -1 when it never returns.
std::int64_t first_return_to_zero(const SimulationCurves& sim, Policy p) {
  bool raised = false;
  for (std::int64_t step = 1; step <= sim.cfg.budget; ++step) {
    const double v = sim.mean(p, Metric::kBeta1, step);
    if (v > 0) raised = true;
    if (raised && v == 0) return step;
  }
  return raised ? -1 : 0;
}

// 6. Window in which loops are present.
Verdict loop_free_window(const SimulationCurves& sim) {
  const std::int64_t random = first_return_to_zero(sim, Policy::kRandom);
  bool ok = random >= 0;
  std::string detail = fmt("beta1 back to 0 at step: random %lld",
                           static_cast<long long>(random));
  for (Policy p : {Policy::kUnsupervised, Policy::kSupervised}) {
    const std::int64_t s = first_return_to_zero(sim, p);
    ok = ok && s >= 0 && s <= random;
    detail += fmt(", %s %lld", std::string(policy_name(p)).c_str(),
                  static_cast<long long>(s));
  }
  for (Policy p : sim.cfg.schemes) {
    const double b0 = sim.mean(p, Metric::kBeta0, sim.cfg.budget);
    ok = ok && b0 == 1.0;
    detail += fmt("; final mean beta0 %s = %.2f",
                  std::string(policy_name(p)).c_str(), b0);
  }
  return {ok, detail};
}

// 7. Labels concentrate on ambiguous pairs.
Verdict budget_vs_ambiguity() {
  ExperimentConfig cfg;
  cfg.n = 16;
  cfg.budget = 10 * num_pairs(16);
  cfg.replications = 20;
  cfg.schemes = {Policy::kSupervised};
  cfg.seed = 707;
  const BudgetHistogram h = budget_histogram(cfg, default_thread_count());
  const double rho = spearman_rho(h.ambiguity, h.mean_count);
  return {rho > 0.2,
          fmt("Spearman(ambiguity, mean count) = %.4f over %zu pairs (want > "
              "0.2)",
              rho, h.pairs.size())};
}

// 8. Decomposition and Betti invariants on random graphs.
Verdict decomposition_oracles() {
  Rng rng(808);
  std::map<std::string, int> failures;
  auto check = [&](bool ok, const char* what) {
    if (!ok) ++failures[what];
  };
  const int graphs = 200;
  int prefixes = 0;
  for (int trial = 0; trial < graphs; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(7));
    const int m = 1 + static_cast<int>(rng.uniform_index(40));
    const ValueMode mode = trial % 2 ? ValueMode::kGeneral : ValueMode::kBinary;
    const ComparisonGraph g = random_graph(rng, n, m, mode);
    const EdgeFlow y = g.observed_flow();
    const HodgeComponents c = decompose(g, y);
    const double tol = 1e-9 * std::max(1.0, y.squaredNorm());

    const EdgeFlow parts[] = {c.bias, c.tie_kernel, c.gradient_flow,
                              c.curl_flow, c.harmonic};
    for (int a = 0; a < 5; ++a) {
      for (int b = a + 1; b < 5; ++b) {
        check(std::abs(parts[a].dot(parts[b])) <= tol, "orthogonality");
      }
    }
    check(std::abs(energies(c).total() - y.squaredNorm()) <= tol, "energy");
    check(max_abs(c.reconstruct() - y) <= tol, "reconstruction");

    const Eigen::MatrixXd d0 = dense_coboundary(g);
    const Eigen::MatrixXd d1 = dense_curl(g);
    check(max_abs(d1 * d0) <= 1e-12, "chain property");
    check(max_abs(c.score - svd_min_norm(d0, y)) <= 1e-8, "min-norm score");
    if (d1.rows() > 0) {
      const Eigen::VectorXd z = svd_min_norm(d1.transpose(), y);
      check(max_abs(c.curl_potential - z) <= 1e-8, "min-norm curl potential");
      check(max_abs(d1 * c.harmonic) <= tol, "harmonic closed");
    }
    check(max_abs(d0.transpose() * c.harmonic) <= tol, "harmonic co-closed");
    if (betti_oracle(g).beta1 == 0) {
      check(max_abs(c.harmonic) <= tol, "beta1 = 0 implies no harmonic part");
    }

    const std::vector<Simplex> stream = filtration(g);
    const TopologyTimeline timeline = track(stream);
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangles;
    int vertices = 0;
    for (std::size_t k = 0; k < stream.size(); ++k) {
      const Simplex& s = stream[k];
      if (s.kind == SimplexKind::kVertex) ++vertices;
      if (s.kind == SimplexKind::kEdge) edges.push_back({s.vertices[0], s.vertices[1]});
      if (s.kind == SimplexKind::kTriangle) {
        triangles.push_back({s.vertices[0], s.vertices[1], s.vertices[2]});
      }
      const BettiNumbers oracle = betti_oracle(vertices, edges, triangles);
      check(timeline.events[k].beta0 == oracle.beta0 &&
                timeline.events[k].beta1 == oracle.beta1,
            "track == betti_oracle");
      ++prefixes;
    }
  }
  std::string detail = fmt("%d graphs, %d filtration prefixes", graphs, prefixes);
  for (const auto& [what, count] : failures) {
    detail += fmt("; %s failed %d times", what.c_str(), count);
  }
  if (failures.empty()) detail += "; all invariants hold";
  return {failures.empty(), detail};
}

}  // namespace
}  // namespace hrank

int main() {
  using namespace hrank;
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = fn();
    const double secs = seconds_since(start);
    std::printf("criterion %d %-28s %s  (%.1fs) %s\n", id, name,
                v.pass ? "PASS" : "FAIL", secs, v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  };

  report(1, "flip-rate", flip_rate);
  report(2, "online-offline-equivalence", online_offline);
  report(3, "kl-formula", kl_consistency);

  const auto start = std::chrono::steady_clock::now();
  const SimulationCurves sim = simulate_reference_protocol();
  std::printf("simulated n=16, T=%lld, R=%d for three schemes in %.1fs\n",
              static_cast<long long>(sim.cfg.budget), sim.cfg.replications,
              seconds_since(start));
  report(4, "sampling-efficiency", [&] { return sampling_efficiency(sim); });
  report(5, "fiedler-dominance", [&] { return fiedler_dominance(sim); });
  report(6, "loop-free-window", [&] { return loop_free_window(sim); });
  report(7, "budget-vs-ambiguity", budget_vs_ambiguity);
  report(8, "decomposition-oracles", decomposition_oracles);

  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
