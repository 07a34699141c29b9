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

#ifndef HRANK_SAMPLING_H_
#define HRANK_SAMPLING_H_

// Pair selection policies:
//
//  * random: uniform over unordered pairs.
//  * unsupervised: greedy algebraic-connectivity growth. Picks the pair that
//    maximizes the first-order increase of the Fiedler value, i.e. the squared
//    difference of the Fiedler vector across the pair.
//  * supervised: maximizes the expected KL divergence between the Gaussian
//    posterior of the ridge HodgeRank model before and after one more label.
//    The inverse (L + gamma I)^{-1} is maintained by rank-1 Sherman-Morrison
//    updates, making every pair's score O(1) and every update O(n^2).
//
// All argmax selections break ties towards the lexicographically smallest
// (i, j); scores within kTieTolerance (relative) of the best count as ties.

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hrank/comparison_graph.h"
#include "hrank/glm.h"
#include "hrank/hodge.h"
#include "hrank/rng.h"

namespace hrank {

inline constexpr double kTieTolerance = 1e-10;

struct ItemPair {
  ItemIndex i = 0;
  ItemIndex j = 0;

  friend auto operator<=>(const ItemPair&, const ItemPair&) = default;
};

std::int64_t num_pairs(int n);
// Index of (i, j), i < j, in lexicographic order.
std::int64_t pair_index(int n, ItemPair pair);
ItemPair pair_from_index(int n, std::int64_t index);

struct PairScorecard {
  // Lexicographic order over all i < j.
  std::vector<ItemPair> pairs;
  std::vector<double> scores;
  ItemPair best;
  double best_score = 0;
};

// Fills best/best_score from pairs/scores using the tie rule.
void select_best(PairScorecard& card);

enum class Policy { kRandom, kUnsupervised, kSupervised };
Policy parse_policy(std::string_view name);
std::string_view policy_name(Policy policy);

// ---------------------------------------------------------------------------
// Unsupervised (Fiedler) sampling.

struct FiedlerResult {
  double value = 0;
  Eigen::VectorXd vector;
  // Orthonormal basis, orthogonal to the all-ones vector, of the eigenspace
  // belonging to `value`. Has more than one column when it is degenerate.
  Eigen::MatrixXd eigenspace;
};

// Second-smallest eigenpair of a graph Laplacian, computed on the complement
// of the all-ones vector so the returned vector is always orthogonal to it.
// The vector's first significant entry is positive. Throws
// std::invalid_argument for non-square or non-symmetric input.
FiedlerResult fiedler(const Eigen::MatrixXd& laplacian);

struct FiedlerState {
  Eigen::MatrixXd laplacian;
  double fiedler_value = 0;
  Eigen::VectorXd fiedler_vector;
  Eigen::MatrixXd eigenspace;

  static FiedlerState from_laplacian(Eigen::MatrixXd laplacian);
};

// Score of (i, j) is sum over the Fiedler eigenspace basis of
// (v(i) - v(j))^2, which equals (v2(i) - v2(j))^2 when the Fiedler value is
// simple and does not depend on the choice of basis when it is not.
PairScorecard fiedler_scores(const FiedlerState& state);
ItemPair unsupervised_select(const FiedlerState& state);
void fiedler_update(FiedlerState& state, ItemPair pair);

// ---------------------------------------------------------------------------
// Supervised (Bayesian) sampling.

struct PosteriorState {
  ScoreVector mean;
  // (L_t + gamma I)^{-1}; the posterior covariance is sigma_eps^2 times this.
  Eigen::MatrixXd inverse;
  double gamma = 1.0;
  double sigma_eps = 1.0;
  std::int64_t t = 0;

  // mean = 0, inverse = I / gamma. gamma must be > 0.
  static PosteriorState prior(int n, const RidgeConfig& cfg);

  int num_items() const { return static_cast<int>(mean.size()); }
  // d (L_t + gamma I)^{-1} d^T for d = e_i - e_j.
  double pair_variance(ItemPair pair) const;
};

// KL(P^{t+1} || P^t) after observing y on the pair:
//   1/2 [ (y - d mu)^2 C / (sigma^2 (1 + C)^2) + ln(1 + C) - C / (1 + C) ].
double kl_step(const PosteriorState& state, ItemPair pair, double y);

// Two-point expectation of kl_step over y = +1 (probability
// Phi(mu_i - mu_j)) and y = -1.
double expected_information_gain(const PosteriorState& state, ItemPair pair,
                                 LinkKind link);

PairScorecard eig_scores(const PosteriorState& state, LinkKind link);
ItemPair supervised_select(const PosteriorState& state, LinkKind link);

// Sherman-Morrison update of the inverse and the matching mean update.
void posterior_update(PosteriorState& state, ItemPair pair, double y);

// Dense (L + gamma I)^{-1} and mean from scratch. Throws
// std::invalid_argument if gamma <= 0.
PosteriorState offline_posterior(const ComparisonGraph& graph,
                                 const EdgeFlow& y, const RidgeConfig& cfg);

// max |inverse * (L + gamma I) - I|.
double posterior_consistency_error(const PosteriorState& state,
                                   const Eigen::MatrixXd& laplacian);

// Supervised selection without the rank-1 machinery: every candidate pair's
// posterior is rebuilt by a dense inversion and scored with the full Gaussian
// KL expression. O(n^5) per step; the reference the online path is checked
// and timed against.
class OfflineSupervisedSampler {
 public:
  OfflineSupervisedSampler(int n, const RidgeConfig& cfg);

  ItemPair select(LinkKind link) const;
  void observe(ItemPair pair, double y);
  // Posterior recomputed from the accumulated Laplacian and D0^T y.
  PosteriorState posterior() const;

 private:
  int n_;
  RidgeConfig cfg_;
  std::int64_t t_ = 0;
  Eigen::MatrixXd laplacian_;
  Eigen::VectorXd rhs_;
};

// ---------------------------------------------------------------------------

ItemPair random_select(int n, Rng& rng);

}  // namespace hrank

#endif  // HRANK_SAMPLING_H_
