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

#include "hrank/sampling.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace hrank {
namespace {

// Orthonormal basis of the complement of the all-ones vector (Helmert
// contrasts); column k is (1, ..., 1, -(k+1), 0, ...) / sqrt((k+1)(k+2)).
Eigen::MatrixXd ones_complement_basis(int n) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, std::max(n - 1, 0));
  for (int k = 0; k + 1 < n; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k + 1) * (k + 2));
    for (int r = 0; r <= k; ++r) q(r, k) = scale;
    q(k + 1, k) = -(k + 1) * scale;
  }
  return q;
}

void normalize_sign(Eigen::VectorXd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > 1e-12) {
      if (v[k] < 0) v = -v;
      return;
    }
  }
}

PairScorecard empty_scorecard(int n) {
  PairScorecard card;
  const auto total = static_cast<std::size_t>(num_pairs(n));
  card.pairs.reserve(total);
  card.scores.reserve(total);
  return card;
}

void check_pair(int n, ItemPair pair) {
  if (pair.i < 0 || pair.j < 0 || pair.i >= n || pair.j >= n ||
      pair.i == pair.j) {
    throw std::invalid_argument("invalid item pair (" + std::to_string(pair.i) +
                                ", " + std::to_string(pair.j) + ")");
  }
}

double log_det_spd(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

std::int64_t num_pairs(int n) {
  return n < 2 ? 0 : static_cast<std::int64_t>(n) * (n - 1) / 2;
}

std::int64_t pair_index(int n, ItemPair pair) {
  const std::int64_t i = std::min(pair.i, pair.j);
  const std::int64_t j = std::max(pair.i, pair.j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

ItemPair pair_from_index(int n, std::int64_t index) {
  if (index < 0 || index >= num_pairs(n)) {
    throw std::out_of_range("pair_from_index: index out of range");
  }
  int i = 0;
  while (index >= n - 1 - i) {
    index -= n - 1 - i;
    ++i;
  }
  return {i, i + 1 + static_cast<int>(index)};
}

void select_best(PairScorecard& card) {
  if (card.pairs.empty()) {
    throw std::invalid_argument("select_best: no candidate pairs");
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < card.scores.size(); ++k) {
    const double margin =
        kTieTolerance * std::max(1.0, std::abs(card.scores[best]));
    if (card.scores[k] > card.scores[best] + margin) best = k;
  }
  card.best = card.pairs[best];
  card.best_score = card.scores[best];
}

Policy parse_policy(std::string_view name) {
  if (name == "random") return Policy::kRandom;
  if (name == "unsupervised") return Policy::kUnsupervised;
  if (name == "supervised") return Policy::kSupervised;
  throw std::invalid_argument("unknown sampling policy '" + std::string(name) +
                              "'");
}

std::string_view policy_name(Policy policy) {
  switch (policy) {
    case Policy::kRandom:
      return "random";
    case Policy::kUnsupervised:
      return "unsupervised";
    case Policy::kSupervised:
      return "supervised";
  }
  throw std::invalid_argument("unknown policy");
}

FiedlerResult fiedler(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() != laplacian.cols()) {
    throw std::invalid_argument("fiedler: matrix is not square");
  }
  const double scale = std::max(1.0, laplacian.cwiseAbs().maxCoeff());
  if ((laplacian - laplacian.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * scale) {
    throw std::invalid_argument("fiedler: matrix is not symmetric");
  }
  const int n = static_cast<int>(laplacian.rows());
  FiedlerResult out;
  if (n < 2) {
    out.vector = Eigen::VectorXd::Zero(n);
    out.eigenspace = Eigen::MatrixXd::Zero(n, 0);
    return out;
  }
  const Eigen::MatrixXd q = ones_complement_basis(n);
  const Eigen::MatrixXd reduced = q.transpose() * laplacian * q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced);
  const Eigen::VectorXd& values = eig.eigenvalues();

  out.value = std::max(values[0], 0.0);
  out.vector = q * eig.eigenvectors().col(0);
  normalize_sign(out.vector);

  const double cluster_tol = 1e-9 * std::max(1.0, values.cwiseAbs().maxCoeff());
  int width = 1;
  while (width < values.size() && values[width] - values[0] <= cluster_tol) {
    ++width;
  }
  out.eigenspace = q * eig.eigenvectors().leftCols(width);
  return out;
}

FiedlerState FiedlerState::from_laplacian(Eigen::MatrixXd laplacian) {
  FiedlerResult f = fiedler(laplacian);
  FiedlerState state;
  state.laplacian = std::move(laplacian);
  state.fiedler_value = f.value;
  state.fiedler_vector = std::move(f.vector);
  state.eigenspace = std::move(f.eigenspace);
  return state;
}

PairScorecard fiedler_scores(const FiedlerState& state) {
  const int n = static_cast<int>(state.laplacian.rows());
  PairScorecard card = empty_scorecard(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      card.pairs.push_back({i, j});
      card.scores.push_back(
          (state.eigenspace.row(i) - state.eigenspace.row(j)).squaredNorm());
    }
  }
  select_best(card);
  return card;
}

ItemPair unsupervised_select(const FiedlerState& state) {
  return fiedler_scores(state).best;
}

void fiedler_update(FiedlerState& state, ItemPair pair) {
  check_pair(static_cast<int>(state.laplacian.rows()), pair);
  add_pair_laplacian(state.laplacian, pair.i, pair.j);
  FiedlerResult f = fiedler(state.laplacian);
  state.fiedler_value = f.value;
  state.fiedler_vector = std::move(f.vector);
  state.eigenspace = std::move(f.eigenspace);
}

PosteriorState PosteriorState::prior(int n, const RidgeConfig& cfg) {
  cfg.validate();
  if (!(cfg.gamma > 0.0)) {
    throw std::invalid_argument("posterior prior needs gamma > 0");
  }
  PosteriorState state;
  state.mean = ScoreVector::Zero(n);
  state.inverse = Eigen::MatrixXd::Identity(n, n) / cfg.gamma;
  state.gamma = cfg.gamma;
  state.sigma_eps = cfg.sigma_eps;
  return state;
}

double PosteriorState::pair_variance(ItemPair pair) const {
  return inverse(pair.i, pair.i) + inverse(pair.j, pair.j) -
         2.0 * inverse(pair.i, pair.j);
}

double kl_step(const PosteriorState& state, ItemPair pair, double y) {
  const double c = state.pair_variance(pair);
  const double innovation = y - (state.mean[pair.i] - state.mean[pair.j]);
  const double shrunk = innovation / (1.0 + c);
  const double sigma2 = state.sigma_eps * state.sigma_eps;
  return 0.5 * (shrunk * shrunk * c / sigma2 + std::log1p(c) - c / (1.0 + c));
}

double expected_information_gain(const PosteriorState& state, ItemPair pair,
                                 LinkKind link) {
  const double p =
      preference_prob(link, state.mean[pair.i] - state.mean[pair.j]);
  return p * kl_step(state, pair, 1.0) + (1.0 - p) * kl_step(state, pair, -1.0);
}

PairScorecard eig_scores(const PosteriorState& state, LinkKind link) {
  const int n = state.num_items();
  PairScorecard card = empty_scorecard(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      card.pairs.push_back({i, j});
      card.scores.push_back(expected_information_gain(state, {i, j}, link));
    }
  }
  select_best(card);
  return card;
}

ItemPair supervised_select(const PosteriorState& state, LinkKind link) {
  return eig_scores(state, link).best;
}

void posterior_update(PosteriorState& state, ItemPair pair, double y) {
  check_pair(state.num_items(), pair);
  const Eigen::VectorXd v =
      state.inverse.col(pair.i) - state.inverse.col(pair.j);
  const double c = v[pair.i] - v[pair.j];
  const double innovation = y - (state.mean[pair.i] - state.mean[pair.j]);
  state.mean += (innovation / (1.0 + c)) * v;
  state.inverse.noalias() -= (v / (1.0 + c)) * v.transpose();
  ++state.t;
}

PosteriorState offline_posterior(const ComparisonGraph& graph,
                                 const EdgeFlow& y, const RidgeConfig& cfg) {
  cfg.validate();
  if (!(cfg.gamma > 0.0)) {
    throw std::invalid_argument(
        "offline_posterior: gamma must be > 0 (L + gamma I is singular)");
  }
  const int n = graph.num_items();
  const Eigen::MatrixXd regularized =
      laplacian(graph) + cfg.gamma * Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(regularized);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("offline_posterior: matrix is not positive definite");
  }
  PosteriorState state;
  state.inverse = llt.solve(Eigen::MatrixXd::Identity(n, n));
  state.mean = state.inverse * coboundary_adjoint(graph, y);
  state.gamma = cfg.gamma;
  state.sigma_eps = cfg.sigma_eps;
  state.t = graph.num_records();
  return state;
}

double posterior_consistency_error(const PosteriorState& state,
                                   const Eigen::MatrixXd& laplacian) {
  const int n = state.num_items();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  return (state.inverse * (laplacian + state.gamma * identity) - identity)
      .cwiseAbs()
      .maxCoeff();
}

OfflineSupervisedSampler::OfflineSupervisedSampler(int n,
                                                   const RidgeConfig& cfg)
    : n_(n),
      cfg_(cfg),
      laplacian_(Eigen::MatrixXd::Zero(n, n)),
      rhs_(Eigen::VectorXd::Zero(n)) {
  cfg_.validate();
  if (!(cfg_.gamma > 0.0)) {
    throw std::invalid_argument("OfflineSupervisedSampler: gamma must be > 0");
  }
}

ItemPair OfflineSupervisedSampler::select(LinkKind link) const {
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n_, n_);
  const Eigen::MatrixXd current = laplacian_ + cfg_.gamma * identity;
  const Eigen::LLT<Eigen::MatrixXd> current_llt(current);
  const Eigen::VectorXd mean = current_llt.solve(rhs_);
  const double current_log_det = log_det_spd(current_llt);
  const double sigma2 = cfg_.sigma_eps * cfg_.sigma_eps;

  PairScorecard card = empty_scorecard(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      Eigen::MatrixXd next = current;
      add_pair_laplacian(next, i, j);
      const Eigen::LLT<Eigen::MatrixXd> next_llt(next);
      const Eigen::MatrixXd next_inverse = next_llt.solve(identity);
      const double trace_term = (current * next_inverse).trace();
      const double log_det_ratio = log_det_spd(next_llt) - current_log_det;

      auto kl = [&](double y) {
        Eigen::VectorXd rhs = rhs_;
        rhs[i] += y;
        rhs[j] -= y;
        const Eigen::VectorXd shift = next_inverse * rhs - mean;
        return 0.5 * (shift.dot(current * shift) / sigma2 - n_ + trace_term +
                      log_det_ratio);
      };
      const double p = preference_prob(link, mean[i] - mean[j]);
      card.pairs.push_back({i, j});
      card.scores.push_back(p * kl(1.0) + (1.0 - p) * kl(-1.0));
    }
  }
  select_best(card);
  return card.best;
}

void OfflineSupervisedSampler::observe(ItemPair pair, double y) {
  check_pair(n_, pair);
  add_pair_laplacian(laplacian_, pair.i, pair.j);
  rhs_[pair.i] += y;
  rhs_[pair.j] -= y;
  ++t_;
}

PosteriorState OfflineSupervisedSampler::posterior() const {
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n_, n_);
  const Eigen::LLT<Eigen::MatrixXd> llt(laplacian_ + cfg_.gamma * identity);
  PosteriorState state;
  state.inverse = llt.solve(identity);
  state.mean = state.inverse * rhs_;
  state.gamma = cfg_.gamma;
  state.sigma_eps = cfg_.sigma_eps;
  state.t = t_;
  return state;
}

ItemPair random_select(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("random_select: need n >= 2");
  return pair_from_index(
      n, static_cast<std::int64_t>(rng.uniform_index(
             static_cast<std::uint64_t>(num_pairs(n)))));
}

}  // namespace hrank
