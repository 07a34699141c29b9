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

#include "hrank/topology.h"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>

namespace hrank {
namespace {

std::pair<int, int> edge_key(int a, int b) {
  return {std::min(a, b), std::max(a, b)};
}

// Sorted symmetric difference: column addition over GF(2).
std::vector<int> gf2_add(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

// Rank over GF(2) of a matrix given as bit-packed columns.
int gf2_rank(std::vector<std::vector<std::uint64_t>> columns) {
  int rank = 0;
  const std::size_t words = columns.empty() ? 0 : columns.front().size();
  std::vector<bool> used(columns.size(), false);
  for (std::size_t w = 0; w < words; ++w) {
    for (int bit = 0; bit < 64; ++bit) {
      const std::uint64_t mask = std::uint64_t{1} << bit;
      std::size_t pivot = columns.size();
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (!used[c] && (columns[c][w] & mask)) {
          pivot = c;
          break;
        }
      }
      if (pivot == columns.size()) continue;
      used[pivot] = true;
      ++rank;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c != pivot && (columns[c][w] & mask)) {
          for (std::size_t k = 0; k < words; ++k) columns[c][k] ^= columns[pivot][k];
        }
      }
    }
  }
  return rank;
}

void set_bit(std::vector<std::uint64_t>& column, int row) {
  column[row / 64] |= std::uint64_t{1} << (row % 64);
}

}  // namespace

std::string_view simplex_kind_name(SimplexKind kind) {
  switch (kind) {
    case SimplexKind::kVertex:
      return "vertex";
    case SimplexKind::kEdge:
      return "edge";
    case SimplexKind::kTriangle:
      return "triangle";
  }
  return "unknown";
}

BettiNumbers TopologyTimeline::at(std::int64_t budget) const {
  BettiNumbers out;
  for (const TopologyEvent& e : events) {
    if (e.seq > budget) break;
    out = {e.beta0, e.beta1};
  }
  return out;
}

int TopologyTracker::vertex_slot(int v) const {
  auto it = vertex_slots_.find(v);
  if (it == vertex_slots_.end()) {
    throw FaceOrderError("face order violation: vertex " + std::to_string(v) +
                         " has not been added");
  }
  return it->second;
}

TopologyEvent TopologyTracker::add(const Simplex& s) {
  const auto& v = s.vertices;
  switch (s.kind) {
    case SimplexKind::kVertex: {
      if (vertex_slots_.contains(v[0])) {
        throw FaceOrderError("vertex " + std::to_string(v[0]) + " added twice");
      }
      vertex_slots_[v[0]] = components_.add();
      break;
    }
    case SimplexKind::kEdge: {
      if (v[0] == v[1]) throw FaceOrderError("degenerate edge");
      const auto key = edge_key(v[0], v[1]);
      if (edge_ids_.contains(key)) {
        throw FaceOrderError("edge (" + std::to_string(key.first) + ", " +
                             std::to_string(key.second) + ") added twice");
      }
      const int a = vertex_slot(v[0]);
      const int b = vertex_slot(v[1]);
      const int id = static_cast<int>(edge_ids_.size());
      edge_ids_[key] = id;
      if (!components_.unite(a, b)) ++beta1_;
      break;
    }
    case SimplexKind::kTriangle: {
      std::array<int, 3> sorted = v;
      std::sort(sorted.begin(), sorted.end());
      if (sorted[0] == sorted[1] || sorted[1] == sorted[2]) {
        throw FaceOrderError("degenerate triangle");
      }
      if (triangles_.contains(sorted)) {
        throw FaceOrderError("triangle added twice");
      }
      std::vector<int> column;
      for (const auto& [a, b] : {std::pair{sorted[0], sorted[1]},
                                 std::pair{sorted[1], sorted[2]},
                                 std::pair{sorted[0], sorted[2]}}) {
        auto it = edge_ids_.find({a, b});
        if (it == edge_ids_.end()) {
          throw FaceOrderError("face order violation: triangle edge (" +
                               std::to_string(a) + ", " + std::to_string(b) +
                               ") has not been added");
        }
        column.push_back(it->second);
      }
      triangles_.insert(sorted);
      std::sort(column.begin(), column.end());
      while (!column.empty()) {
        auto owner = column_by_pivot_.find(column.back());
        if (owner == column_by_pivot_.end()) break;
        column = gf2_add(column, owner->second);
      }
      if (!column.empty()) {
        const int pivot = column.back();
        column_by_pivot_.emplace(pivot, std::move(column));
        --beta1_;
      }
      break;
    }
  }
  const TopologyEvent event{s.seq, s.kind, components_.num_sets(), beta1_};
  timeline_.events.push_back(event);
  return event;
}

void TopologyTracker::add_vertices(int n) {
  for (int v = 0; v < n; ++v) add(Simplex::vertex(v, 0));
}

void TopologyTracker::observe(const ComparisonGraph& graph,
                              const AddResult& added) {
  if (!added.new_edge) return;
  const ComparisonRecord& rec = graph.records()[added.seq - 1];
  add(Simplex::edge(rec.item_i, rec.item_j, added.seq));
  for (const Triangle& t : added.new_triangles) {
    add(Simplex::triangle(t.i, t.j, t.k, t.created_seq));
  }
}

TopologyTimeline track(std::span<const Simplex> stream) {
  TopologyTracker tracker;
  for (const Simplex& s : stream) tracker.add(s);
  return tracker.timeline();
}

std::vector<Simplex> filtration(const ComparisonGraph& graph) {
  std::vector<Simplex> out;
  for (int v = 0; v < graph.num_items(); ++v) out.push_back(Simplex::vertex(v, 0));
  const auto& triangles = graph.triangles();
  std::size_t next_triangle = 0;
  for (const Edge& e : graph.edges()) {
    out.push_back(Simplex::edge(e.i, e.j, e.created_seq));
    while (next_triangle < triangles.size() &&
           triangles[next_triangle].created_seq == e.created_seq) {
      const Triangle& t = triangles[next_triangle++];
      out.push_back(Simplex::triangle(t.i, t.j, t.k, t.created_seq));
    }
  }
  return out;
}

BettiNumbers betti_oracle(int num_vertices,
                          std::span<const std::array<int, 2>> edges,
                          std::span<const std::array<int, 3>> triangles) {
  std::map<std::pair<int, int>, int> edge_row;
  const std::size_t vertex_words = (num_vertices + 63) / 64;
  std::vector<std::vector<std::uint64_t>> d1;
  for (const auto& e : edges) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= num_vertices || e[1] >= num_vertices) {
      throw std::invalid_argument("betti_oracle: edge endpoint out of range");
    }
    edge_row.emplace(edge_key(e[0], e[1]), static_cast<int>(d1.size()));
    std::vector<std::uint64_t> column(vertex_words, 0);
    set_bit(column, e[0]);
    set_bit(column, e[1]);
    d1.push_back(std::move(column));
  }
  const std::size_t edge_words = (edges.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> d2;
  for (const auto& t : triangles) {
    std::vector<std::uint64_t> column(edge_words, 0);
    for (const auto& [a, b] : {std::pair{t[0], t[1]}, std::pair{t[1], t[2]},
                               std::pair{t[0], t[2]}}) {
      auto it = edge_row.find(edge_key(a, b));
      if (it == edge_row.end()) {
        throw std::invalid_argument("betti_oracle: triangle edge missing");
      }
      set_bit(column, it->second);
    }
    d2.push_back(std::move(column));
  }
  const int rank1 = gf2_rank(std::move(d1));
  const int rank2 = gf2_rank(std::move(d2));
  return {num_vertices - rank1,
          static_cast<int>(edges.size()) - rank1 - rank2};
}

BettiNumbers betti_oracle(const ComparisonGraph& graph) {
  std::vector<std::array<int, 2>> edges;
  for (const Edge& e : graph.edges()) edges.push_back({e.i, e.j});
  std::vector<std::array<int, 3>> triangles;
  for (const Triangle& t : graph.triangles()) triangles.push_back({t.i, t.j, t.k});
  return betti_oracle(graph.num_items(), edges, triangles);
}

BettiCurve loop_free_fraction(std::span<const TopologyTimeline> timelines,
                              std::span<const std::int64_t> budgets) {
  if (timelines.empty()) {
    throw std::invalid_argument("loop_free_fraction: no timelines");
  }
  BettiCurve curve;
  curve.budgets.assign(budgets.begin(), budgets.end());
  for (std::int64_t b : budgets) {
    double sum0 = 0;
    double sum1 = 0;
    for (const TopologyTimeline& tl : timelines) {
      const BettiNumbers betti = tl.at(b);
      sum0 += betti.beta0;
      sum1 += betti.beta1;
    }
    curve.mean_beta0.push_back(sum0 / timelines.size());
    curve.mean_beta1.push_back(sum1 / timelines.size());
  }
  return curve;
}

void write_timeline_csv(std::ostream& out, const TopologyTimeline& timeline) {
  out << "seq,kind,beta0,beta1\n";
  for (const TopologyEvent& e : timeline.events) {
    out << e.seq << ',' << simplex_kind_name(e.kind) << ',' << e.beta0 << ','
        << e.beta1 << '\n';
  }
}

}  // namespace hrank
