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

#include "hrank/hodge.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace hrank {
namespace {

void check_flow(const ComparisonGraph& graph, const EdgeFlow& y,
                const char* what) {
  if (y.size() != graph.num_records()) {
    throw std::invalid_argument(std::string(what) +
                                ": flow length does not match record count");
  }
}

// D1 D1^T assembled edge by edge: entry (s, t) is the sum over shared edges e
// of sign_s(e) sign_t(e) / m_e.
Eigen::MatrixXd curl_gram(const ComparisonGraph& graph) {
  const auto& triangles = graph.triangles();
  const int num_t = static_cast<int>(triangles.size());
  std::vector<std::vector<std::pair<int, int>>> incident(graph.edges().size());
  for (int t = 0; t < num_t; ++t) {
    const Triangle& tri = triangles[t];
    incident[graph.edge_index(tri.i, tri.j)].emplace_back(t, 1);
    incident[graph.edge_index(tri.j, tri.k)].emplace_back(t, 1);
    incident[graph.edge_index(tri.i, tri.k)].emplace_back(t, -1);
  }
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(num_t, num_t);
  for (std::size_t e = 0; e < incident.size(); ++e) {
    const double w =
        1.0 / static_cast<double>(graph.records_on_edge(static_cast<int>(e)).size());
    for (const auto& [s, sign_s] : incident[e]) {
      for (const auto& [t, sign_t] : incident[e]) {
        gram(s, t) += sign_s * sign_t * w;
      }
    }
  }
  return gram;
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

}  // namespace

void RidgeConfig::validate() const {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("RidgeConfig: gamma must be >= 0");
  }
  if (!(sigma_eps > 0.0)) {
    throw std::invalid_argument("RidgeConfig: sigma_eps must be > 0");
  }
}

Eigen::MatrixXd pseudo_inverse_psd(const Eigen::MatrixXd& m,
                                   double rel_cutoff) {
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double cutoff = rel_cutoff * std::max(values.maxCoeff(), 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (values[k] > cutoff && values[k] > 0.0) inv[k] = 1.0 / values[k];
  }
  const Eigen::MatrixXd& vectors = eig.eigenvectors();
  return vectors * inv.asDiagonal() * vectors.transpose();
}

ComponentEnergies energies(const HodgeComponents& c) {
  return {c.bias.squaredNorm(), c.tie_kernel.squaredNorm(),
          c.gradient_flow.squaredNorm(), c.curl_flow.squaredNorm(),
          c.harmonic.squaredNorm()};
}

BiasSplit split_bias(const ComparisonGraph& graph, const EdgeFlow& y) {
  check_flow(graph, y, "split_bias");
  BiasSplit out{EdgeFlow::Zero(y.size()), y};
  // Binary records are skew by construction.
  if (graph.mode() == ValueMode::kBinary) return out;

  // (voter, edge) -> forward and reverse report indices in arrival order.
  std::map<std::pair<VoterId, int>, std::pair<std::vector<int>, std::vector<int>>>
      reports;
  const auto& records = graph.records();
  for (int r = 0; r < graph.num_records(); ++r) {
    auto& slot = reports[{records[r].voter, graph.edge_of_record(r)}];
    (graph.orientation(r) > 0 ? slot.first : slot.second).push_back(r);
  }
  for (const auto& [key, lists] : reports) {
    const auto& [forward, reverse] = lists;
    const std::size_t matched = std::min(forward.size(), reverse.size());
    for (std::size_t k = 0; k < matched; ++k) {
      const int f = forward[k];
      const int g = reverse[k];
      // In reported orientation the bias is (y_ij + y_ji) / 2 on both; the
      // reverse report's canonical sign is flipped.
      const double beta = (y[f] - y[g]) / 2.0;
      out.bias[f] = beta;
      out.bias[g] = -beta;
    }
  }
  out.skew = y - out.bias;
  return out;
}

TieSplit split_tie_kernel(const ComparisonGraph& graph,
                          const EdgeFlow& y_skew) {
  check_flow(graph, y_skew, "split_tie_kernel");
  TieSplit out{EdgeFlow(y_skew.size()), EdgeFlow(y_skew.size())};
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& members = graph.records_on_edge(static_cast<int>(e));
    double mean = 0;
    for (int r : members) mean += y_skew[r];
    mean /= static_cast<double>(members.size());
    for (int r : members) {
      out.edge_mean[r] = mean;
      out.tie_kernel[r] = y_skew[r] - mean;
    }
  }
  return out;
}

GlobalScore global_score(const ComparisonGraph& graph, const EdgeFlow& y,
                         const RidgeConfig& cfg) {
  cfg.validate();
  check_flow(graph, y, "global_score");
  const Eigen::MatrixXd lap = laplacian(graph);
  const ScoreVector rhs = coboundary_adjoint(graph, y);

  GlobalScore out;
  if (cfg.gamma > 0.0) {
    const Eigen::MatrixXd regularized =
        lap + cfg.gamma *
                  Eigen::MatrixXd::Identity(graph.num_items(), graph.num_items());
    out.x = regularized.llt().solve(rhs);
    out.num_components = 1;
  } else {
    out.x = pseudo_inverse_psd(lap) * rhs;
    out.num_components = static_cast<int>(connected_components(graph).size());
  }
  return out;
}

HodgeComponents decompose(const ComparisonGraph& graph, const EdgeFlow& y) {
  check_flow(graph, y, "decompose");
  HodgeComponents c;
  BiasSplit bias = split_bias(graph, y);
  TieSplit tie = split_tie_kernel(graph, bias.skew);
  c.bias = std::move(bias.bias);
  c.tie_kernel = std::move(tie.tie_kernel);

  c.score = pseudo_inverse_psd(laplacian(graph)) *
            coboundary_adjoint(graph, tie.edge_mean);
  c.gradient_flow = coboundary(graph, c.score);

  // D1 D0 = 0, so D1 of the gradient residual is curl(edge_mean).
  c.curl_potential =
      pseudo_inverse_psd(curl_gram(graph)) * curl(graph, tie.edge_mean);
  c.curl_flow = curl_adjoint(graph, c.curl_potential);
  c.harmonic = tie.edge_mean - c.gradient_flow - c.curl_flow;
  return c;
}

EdgeFlow cyclic_projection(const ComparisonGraph& graph, const EdgeFlow& y) {
  check_flow(graph, y, "cyclic_projection");
  const EdgeFlow skew = split_bias(graph, y).skew;
  const ScoreVector x =
      pseudo_inverse_psd(laplacian(graph)) * coboundary_adjoint(graph, skew);
  return skew - coboundary(graph, x);
}

LassoResult outlier_lasso(const ComparisonGraph& graph, const EdgeFlow& y,
                          double lambda, double tolerance, int max_iterations) {
  check_flow(graph, y, "outlier_lasso");
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("outlier_lasso: lambda must be >= 0");
  }
  const Eigen::MatrixXd lap_pinv = pseudo_inverse_psd(laplacian(graph));
  auto project = [&](const EdgeFlow& v) -> EdgeFlow {
    const EdgeFlow skew = split_bias(graph, v).skew;
    return skew - coboundary(graph, lap_pinv * coboundary_adjoint(graph, skew));
  };
  auto objective = [&](const EdgeFlow& projected_residual,
                       const EdgeFlow& g) {
    return projected_residual.squaredNorm() + lambda * g.lpNorm<1>();
  };

  // P is an orthogonal projection, so the smooth part has gradient
  // -2 P (y - gamma) with Lipschitz constant 2; the step is 1/2.
  constexpr double kStep = 0.5;
  LassoResult out;
  out.outliers = EdgeFlow::Zero(y.size());
  EdgeFlow residual = project(y);
  out.objective = objective(residual, out.outliers);
  for (out.iterations = 0; out.iterations < max_iterations;) {
    EdgeFlow next = out.outliers + 2.0 * kStep * residual;
    for (Eigen::Index r = 0; r < next.size(); ++r) {
      next[r] = soft_threshold(next[r], kStep * lambda);
    }
    EdgeFlow next_residual = project(y - next);
    const double next_objective = objective(next_residual, next);
    ++out.iterations;
    const double decrease = out.objective - next_objective;
    if (decrease >= 0.0) {
      out.outliers = std::move(next);
      residual = std::move(next_residual);
      out.objective = next_objective;
    }
    if (decrease < tolerance) break;
  }
  return out;
}

WorkerBias worker_bias_fit(const ComparisonGraph& graph, const EdgeFlow& y) {
  check_flow(graph, y, "worker_bias_fit");
  const int n = graph.num_items();
  const int voters = graph.num_voters();
  const int m = graph.num_records();

  std::vector<int> per_voter(voters, 0);
  for (const ComparisonRecord& rec : graph.records()) ++per_voter[rec.voter];
  for (int v = 0; v < voters; ++v) {
    if (per_voter[v] == 0) {
      throw std::invalid_argument("worker_bias_fit: voter " +
                                  std::to_string(v) + " has no records");
    }
  }

  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(m, n + voters);
  const auto& records = graph.records();
  for (int r = 0; r < m; ++r) {
    design(r, records[r].item_i) = 1.0;
    design(r, records[r].item_j) = -1.0;
    design(r, n + records[r].voter) = graph.orientation(r);
  }
  const Eigen::VectorXd solution =
      design.completeOrthogonalDecomposition().solve(y);

  WorkerBias out;
  out.score = solution.head(n);
  out.intercepts = solution.tail(voters);
  return out;
}

}  // namespace hrank
