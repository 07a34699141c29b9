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

#ifndef HRANK_HODGE_H_
#define HRANK_HODGE_H_

// Orthogonal decomposition of multi-voter comparison flows
//
//   y = b + u + D0 x + D1^T z + w,   w in ker(D0^T) and ker(D1)
//
// where b is the position-bias (symmetric) part, u the per-edge tie kernel,
// D0 x the gradient of a global score, D1^T z local triangular cycles and w
// the harmonic remainder. All flows are in canonical record orientation (see
// ComparisonGraph) and orthogonality is with respect to the plain Euclidean
// inner product over records.
//
// Symmetric parts only exist in general-valued data where a voter reported
// both (i, j) and (j, i). The k-th forward report of voter a on a pair is
// matched with a's k-th reverse report on that pair; unmatched reports are
// treated as skew (zero bias).

#include <vector>

#include <Eigen/Core>

#include "hrank/comparison_graph.h"

namespace hrank {

struct RidgeConfig {
  // sigma_eps^2 / sigma_x^2.
  double gamma = 0.0;
  double sigma_eps = 1.0;

  // Throws std::invalid_argument for gamma < 0 or sigma_eps <= 0.
  void validate() const;
};

struct BiasSplit {
  EdgeFlow bias;
  EdgeFlow skew;
};

struct TieSplit {
  EdgeFlow tie_kernel;
  // Per-edge mean, repeated on every record of the edge.
  EdgeFlow edge_mean;
};

struct GlobalScore {
  ScoreVector x;
  // > 1 means scores are only comparable within a component (gamma == 0).
  int num_components = 1;
};

struct HodgeComponents {
  EdgeFlow bias;
  EdgeFlow tie_kernel;
  ScoreVector score;
  TriangleVector curl_potential;
  EdgeFlow gradient_flow;
  EdgeFlow curl_flow;
  EdgeFlow harmonic;

  EdgeFlow reconstruct() const {
    return bias + tie_kernel + gradient_flow + curl_flow + harmonic;
  }
};

// Squared norms of the five flow components.
struct ComponentEnergies {
  double bias = 0;
  double tie_kernel = 0;
  double gradient = 0;
  double curl = 0;
  double harmonic = 0;

  double total() const { return bias + tie_kernel + gradient + curl + harmonic; }
};

ComponentEnergies energies(const HodgeComponents& components);

BiasSplit split_bias(const ComparisonGraph& graph, const EdgeFlow& y);

TieSplit split_tie_kernel(const ComparisonGraph& graph, const EdgeFlow& y_skew);

// gamma > 0: (L + gamma I)^{-1} D0^T y by Cholesky.
// gamma == 0: L^+ D0^T y, which is mean-zero on every component.
GlobalScore global_score(const ComparisonGraph& graph, const EdgeFlow& y,
                         const RidgeConfig& cfg);

// Works on disconnected graphs; x is mean-zero per component and z is the
// minimum-norm curl potential.
HodgeComponents decompose(const ComparisonGraph& graph, const EdgeFlow& y);

// Projection onto the cyclic part (u + D1^T z + w) of the skew component of y.
EdgeFlow cyclic_projection(const ComparisonGraph& graph, const EdgeFlow& y);

struct LassoResult {
  EdgeFlow outliers;
  double objective = 0;
  int iterations = 0;
};

// Sparse outlier flow gamma minimizing
//   |P y - P gamma|^2 + lambda |gamma|_1,   P = cyclic_projection,
// by proximal gradient (ISTA) from gamma = 0. Stops once an iteration lowers
// the objective by less than `tolerance`.
LassoResult outlier_lasso(const ComparisonGraph& graph, const EdgeFlow& y,
                          double lambda, double tolerance = 1e-10,
                          int max_iterations = 200000);

struct WorkerBias {
  // One per voter id in [0, graph.num_voters()); the position bias of that
  // voter in the orientation they reported.
  Eigen::VectorXd intercepts;
  ScoreVector score;
};

// Joint least squares over per-voter intercepts and global scores,
//   min |y - b - D0 x|^2  with b constant per voter (in reported orientation).
// Minimum-norm solution when the intercepts are not identifiable. Throws
// std::invalid_argument if a voter id below num_voters() has no records.
WorkerBias worker_bias_fit(const ComparisonGraph& graph, const EdgeFlow& y);

// Moore-Penrose inverse of a symmetric PSD matrix by eigendecomposition;
// eigenvalues below rel_cutoff * max eigenvalue are treated as zero.
Eigen::MatrixXd pseudo_inverse_psd(const Eigen::MatrixXd& m,
                                   double rel_cutoff = 1e-10);

}  // namespace hrank

#endif  // HRANK_HODGE_H_
