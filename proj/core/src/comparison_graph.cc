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

#include "hrank/comparison_graph.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "hrank/union_find.h"

namespace hrank {
namespace {

void check_size(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(want) + ", got " +
                                std::to_string(got));
  }
}

}  // namespace

ComparisonGraph::ComparisonGraph(int num_items, ValueMode mode)
    : num_items_(num_items), mode_(mode) {
  if (num_items < 0) {
    throw std::invalid_argument("ComparisonGraph: negative item count");
  }
  const auto slots = static_cast<std::size_t>(num_items) * num_items;
  multiplicity_.assign(slots, 0);
  edge_slot_.assign(slots, -1);
}

AddResult ComparisonGraph::add_comparison(VoterId voter, ItemIndex item_i,
                                          ItemIndex item_j, double choice) {
  if (item_i < 0 || item_i >= num_items_ || item_j < 0 ||
      item_j >= num_items_) {
    throw std::invalid_argument("add_comparison: item index out of range [0, " +
                                std::to_string(num_items_) + ")");
  }
  if (item_i == item_j) {
    throw std::invalid_argument("add_comparison: item compared with itself");
  }
  if (voter < 0) {
    throw std::invalid_argument("add_comparison: negative voter id");
  }
  if (mode_ == ValueMode::kBinary && choice != 1.0 && choice != -1.0) {
    throw std::invalid_argument("add_comparison: binary choice must be +1 or -1");
  }

  const int sign = item_i < item_j ? 1 : -1;
  const ItemIndex lo = std::min(item_i, item_j);
  const ItemIndex hi = std::max(item_i, item_j);

  AddResult result;
  result.seq = static_cast<std::int64_t>(records_.size()) + 1;

  int edge = edge_slot_[slot(lo, hi)];
  if (edge < 0) {
    edge = static_cast<int>(edges_.size());
    edge_slot_[slot(lo, hi)] = edge;
    edge_slot_[slot(hi, lo)] = edge;
    edges_.push_back({lo, hi, result.seq});
    edge_records_.emplace_back();
    result.new_edge = true;
  }
  ++multiplicity_[slot(lo, hi)];
  ++multiplicity_[slot(hi, lo)];

  records_.push_back({voter, lo, hi, sign * choice, result.seq});
  orientation_.push_back(sign);
  record_edge_.push_back(edge);
  edge_records_[edge].push_back(static_cast<int>(records_.size()) - 1);
  num_voters_ = std::max(num_voters_, voter + 1);

  if (result.new_edge) {
    for (ItemIndex k = 0; k < num_items_; ++k) {
      if (k == lo || k == hi) continue;
      if (edge_slot_[slot(lo, k)] < 0 || edge_slot_[slot(hi, k)] < 0) continue;
      std::array<ItemIndex, 3> v{lo, hi, k};
      std::sort(v.begin(), v.end());
      const Triangle t{v[0], v[1], v[2], result.seq};
      triangles_.push_back(t);
      result.new_triangles.push_back(t);
    }
  }
  return result;
}

int ComparisonGraph::multiplicity(ItemIndex i, ItemIndex j) const {
  return multiplicity_[slot(i, j)];
}

int ComparisonGraph::edge_index(ItemIndex i, ItemIndex j) const {
  return edge_slot_[slot(i, j)];
}

EdgeFlow ComparisonGraph::observed_flow() const {
  EdgeFlow y(num_records());
  for (int r = 0; r < num_records(); ++r) y[r] = records_[r].choice;
  return y;
}

EdgeFlow ComparisonGraph::to_reported(const EdgeFlow& flow) const {
  check_size(flow.size(), num_records(), "to_reported");
  EdgeFlow out(flow.size());
  for (int r = 0; r < num_records(); ++r) out[r] = orientation_[r] * flow[r];
  return out;
}

EdgeFlow coboundary(const ComparisonGraph& graph, const ScoreVector& x) {
  check_size(x.size(), graph.num_items(), "coboundary");
  const auto& records = graph.records();
  EdgeFlow y(graph.num_records());
  for (int r = 0; r < graph.num_records(); ++r) {
    y[r] = x[records[r].item_i] - x[records[r].item_j];
  }
  return y;
}

ScoreVector coboundary_adjoint(const ComparisonGraph& graph,
                               const EdgeFlow& y) {
  check_size(y.size(), graph.num_records(), "coboundary_adjoint");
  const auto& records = graph.records();
  ScoreVector x = ScoreVector::Zero(graph.num_items());
  for (int r = 0; r < graph.num_records(); ++r) {
    x[records[r].item_i] += y[r];
    x[records[r].item_j] -= y[r];
  }
  return x;
}

void add_pair_laplacian(Eigen::MatrixXd& laplacian, ItemIndex i, ItemIndex j,
                        double weight) {
  laplacian(i, i) += weight;
  laplacian(j, j) += weight;
  laplacian(i, j) -= weight;
  laplacian(j, i) -= weight;
}

Eigen::MatrixXd laplacian(const ComparisonGraph& graph) {
  const int n = graph.num_items();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : graph.edges()) {
    add_pair_laplacian(lap, e.i, e.j, graph.multiplicity(e.i, e.j));
  }
  return lap;
}

TriangleVector curl(const ComparisonGraph& graph, const EdgeFlow& y) {
  check_size(y.size(), graph.num_records(), "curl");
  const auto& edges = graph.edges();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& members = graph.records_on_edge(static_cast<int>(e));
    for (int r : members) mean[e] += y[r];
    mean[e] /= static_cast<double>(members.size());
  }
  const auto& triangles = graph.triangles();
  TriangleVector z(triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const Triangle& tri = triangles[t];
    z[t] = mean[graph.edge_index(tri.i, tri.j)] +
           mean[graph.edge_index(tri.j, tri.k)] -
           mean[graph.edge_index(tri.i, tri.k)];
  }
  return z;
}

EdgeFlow curl_adjoint(const ComparisonGraph& graph, const TriangleVector& z) {
  const auto& triangles = graph.triangles();
  check_size(z.size(), static_cast<Eigen::Index>(triangles.size()),
             "curl_adjoint");
  Eigen::VectorXd per_edge = Eigen::VectorXd::Zero(graph.edges().size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const Triangle& tri = triangles[t];
    per_edge[graph.edge_index(tri.i, tri.j)] += z[t];
    per_edge[graph.edge_index(tri.j, tri.k)] += z[t];
    per_edge[graph.edge_index(tri.i, tri.k)] -= z[t];
  }
  EdgeFlow y(graph.num_records());
  for (int r = 0; r < graph.num_records(); ++r) {
    const int e = graph.edge_of_record(r);
    y[r] = per_edge[e] / graph.records_on_edge(e).size();
  }
  return y;
}

std::vector<std::vector<ItemIndex>> connected_components(
    const ComparisonGraph& graph) {
  const int n = graph.num_items();
  UnionFind sets(n);
  for (const Edge& e : graph.edges()) sets.unite(e.i, e.j);

  std::vector<int> slot_of_root(n, -1);
  std::vector<std::vector<ItemIndex>> parts;
  for (ItemIndex v = 0; v < n; ++v) {
    const int root = sets.find(v);
    if (slot_of_root[root] < 0) {
      slot_of_root[root] = static_cast<int>(parts.size());
      parts.emplace_back();
    }
    parts[slot_of_root[root]].push_back(v);
  }
  return parts;
}

}  // namespace hrank
