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

#ifndef HRANK_TOPOLOGY_H_
#define HRANK_TOPOLOGY_H_

// Online Betti numbers of the clique complex of a comparison stream.
//
// Simplices arrive in a filtration order (faces before cofaces). beta0 is
// tracked with union-find. beta1 is tracked with the mod-2 reduction of the
// triangle boundary columns: an edge that does not merge two components opens
// a loop, and a triangle whose reduced boundary is non-zero closes one.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "hrank/comparison_graph.h"
#include "hrank/union_find.h"

namespace hrank {

enum class SimplexKind { kVertex, kEdge, kTriangle };
std::string_view simplex_kind_name(SimplexKind kind);

struct Simplex {
  SimplexKind kind = SimplexKind::kVertex;
  // The first 1, 2 or 3 entries are used.
  std::array<int, 3> vertices{};
  std::int64_t seq = 0;

  static Simplex vertex(int v, std::int64_t seq) {
    return {SimplexKind::kVertex, {v, 0, 0}, seq};
  }
  static Simplex edge(int a, int b, std::int64_t seq) {
    return {SimplexKind::kEdge, {a, b, 0}, seq};
  }
  static Simplex triangle(int a, int b, int c, std::int64_t seq) {
    return {SimplexKind::kTriangle, {a, b, c}, seq};
  }
};

struct BettiNumbers {
  int beta0 = 0;
  int beta1 = 0;

  friend bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

struct TopologyEvent {
  std::int64_t seq = 0;
  SimplexKind kind = SimplexKind::kVertex;
  int beta0 = 0;
  int beta1 = 0;
};

struct TopologyTimeline {
  std::vector<TopologyEvent> events;

  // Betti numbers after every event with seq <= budget (zeros if none).
  BettiNumbers at(std::int64_t budget) const;
};

// Thrown when a simplex arrives before one of its faces, or twice.
class FaceOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TopologyTracker {
 public:
  TopologyEvent add(const Simplex& simplex);

  // Adds the vertices 0..n-1 at seq 0.
  void add_vertices(int n);
  // Feeds the edge and triangles created by one ComparisonGraph insertion.
  // Repeated comparisons on an existing edge are no-ops.
  void observe(const ComparisonGraph& graph, const AddResult& added);

  BettiNumbers betti() const { return {components_.num_sets(), beta1_}; }
  const TopologyTimeline& timeline() const { return timeline_; }

 private:
  int vertex_slot(int v) const;

  std::map<int, int> vertex_slots_;
  UnionFind components_;
  std::map<std::pair<int, int>, int> edge_ids_;
  std::set<std::array<int, 3>> triangles_;
  // Reduced triangle boundary columns (sorted edge ids) indexed by pivot.
  std::map<int, std::vector<int>> column_by_pivot_;
  int beta1_ = 0;
  TopologyTimeline timeline_;
};

TopologyTimeline track(std::span<const Simplex> stream);

// Vertices at seq 0, then each edge at its creation seq immediately followed by
// the triangles it closed, in lexicographic order.
std::vector<Simplex> filtration(const ComparisonGraph& graph);

// beta0 = |V| - rank d1, beta1 = |E| - rank d1 - rank d2 with ranks over GF(2).
// Vertices are 0..num_vertices-1. Throws std::invalid_argument if a triangle
// has a missing edge.
BettiNumbers betti_oracle(int num_vertices,
                          std::span<const std::array<int, 2>> edges,
                          std::span<const std::array<int, 3>> triangles);
BettiNumbers betti_oracle(const ComparisonGraph& graph);

struct BettiCurve {
  std::vector<std::int64_t> budgets;
  std::vector<double> mean_beta0;
  std::vector<double> mean_beta1;
};

// Ensemble mean of beta0 and beta1 over timelines at each budget. Throws
// std::invalid_argument on empty input.
BettiCurve loop_free_fraction(std::span<const TopologyTimeline> timelines,
                              std::span<const std::int64_t> budgets);

// Header `seq,kind,beta0,beta1`.
void write_timeline_csv(std::ostream& out, const TopologyTimeline& timeline);

}  // namespace hrank

#endif  // HRANK_TOPOLOGY_H_
