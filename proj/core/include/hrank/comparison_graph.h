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

#ifndef HRANK_COMPARISON_GRAPH_H_
#define HRANK_COMPARISON_GRAPH_H_

// Pairwise comparison data as a multigraph over items, together with the
// chain operators of its clique complex:
//
//   scores (R^n) --coboundary--> edge flows (R^m) --curl--> triangles (R^|T|)
//
// Edge flows carry one coordinate per record, not per edge, so a pair compared
// by several voters contributes several coordinates.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace hrank {

using ItemIndex = int;
using VoterId = int;

using ScoreVector = Eigen::VectorXd;
using EdgeFlow = Eigen::VectorXd;
using TriangleVector = Eigen::VectorXd;

enum class ValueMode {
  // choice is +1 (item_i preferred) or -1.
  kBinary,
  // choice is any real; both orientations of a pair may be reported.
  kGeneral,
};

// A single directed preference. Records held by a ComparisonGraph are stored
// canonically: item_i < item_j and the choice sign flipped if the voter
// reported the pair the other way round.
struct ComparisonRecord {
  VoterId voter = 0;
  ItemIndex item_i = 0;
  ItemIndex item_j = 0;
  double choice = 0.0;
  // 1-based arrival index.
  std::int64_t seq = 0;
};

struct Edge {
  ItemIndex i = 0;  // i < j
  ItemIndex j = 0;
  std::int64_t created_seq = 0;
};

// Oriented i -> j -> k -> i with i < j < k.
struct Triangle {
  ItemIndex i = 0;
  ItemIndex j = 0;
  ItemIndex k = 0;
  std::int64_t created_seq = 0;
};

// What a single add_comparison call changed in the clique complex.
struct AddResult {
  std::int64_t seq = 0;
  bool new_edge = false;
  // In lexicographic order.
  std::vector<Triangle> new_triangles;
};

class ComparisonGraph {
 public:
  explicit ComparisonGraph(int num_items, ValueMode mode = ValueMode::kBinary);

  // Appends a record, updating multiplicities, the edge set and any 3-cliques
  // closed by a new edge. Throws std::invalid_argument for out-of-range items,
  // self comparisons, negative voters, or a non-binary choice in binary mode.
  AddResult add_comparison(VoterId voter, ItemIndex item_i, ItemIndex item_j,
                           double choice);

  int num_items() const { return num_items_; }
  ValueMode mode() const { return mode_; }
  int num_records() const { return static_cast<int>(records_.size()); }
  // One past the largest voter id seen.
  int num_voters() const { return num_voters_; }

  const std::vector<ComparisonRecord>& records() const { return records_; }
  // +1 if the record was reported as (lo, hi), -1 if reported as (hi, lo).
  int orientation(int record) const { return orientation_[record]; }

  int multiplicity(ItemIndex i, ItemIndex j) const;
  // -1 when {i, j} is not an edge.
  int edge_index(ItemIndex i, ItemIndex j) const;
  int edge_of_record(int record) const { return record_edge_[record]; }
  const std::vector<int>& records_on_edge(int edge) const {
    return edge_records_[edge];
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  // Canonical-orientation record values.
  EdgeFlow observed_flow() const;
  // Maps a canonical-orientation flow to the orientation each record was
  // reported in (and back; the map is an involution).
  EdgeFlow to_reported(const EdgeFlow& flow) const;

 private:
  std::size_t slot(ItemIndex i, ItemIndex j) const {
    return static_cast<std::size_t>(i) * num_items_ + j;
  }

  int num_items_;
  ValueMode mode_;
  int num_voters_ = 0;
  std::vector<ComparisonRecord> records_;
  std::vector<int> orientation_;
  std::vector<int> record_edge_;
  std::vector<int> multiplicity_;
  std::vector<int> edge_slot_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> edge_records_;
  std::vector<Triangle> triangles_;
};

// (D0 x) on record (a, i, j) is x_i - x_j.
EdgeFlow coboundary(const ComparisonGraph& graph, const ScoreVector& x);

// D0^T y.
ScoreVector coboundary_adjoint(const ComparisonGraph& graph, const EdgeFlow& y);

// Weighted graph Laplacian D0^T D0 with L(i,j) = -m_ij and L(i,i) = sum_j m_ij.
Eigen::MatrixXd laplacian(const ComparisonGraph& graph);

// Per triangle (i,j,k): mean flow on ij + mean flow on jk + mean flow on ki.
TriangleVector curl(const ComparisonGraph& graph, const EdgeFlow& y);

// Adjoint of curl under the Euclidean inner products on records and triangles.
EdgeFlow curl_adjoint(const ComparisonGraph& graph, const TriangleVector& z);

// Components sorted by smallest member; members ascending.
std::vector<std::vector<ItemIndex>> connected_components(
    const ComparisonGraph& graph);

// Laplacian of a single comparison between i and j.
void add_pair_laplacian(Eigen::MatrixXd& laplacian, ItemIndex i, ItemIndex j,
                        double weight = 1.0);

}  // namespace hrank

#endif  // HRANK_COMPARISON_GRAPH_H_
