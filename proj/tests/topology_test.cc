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

#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"

namespace hrank {
namespace {

using testing::random_graph;

TEST(Tracker, FilledTriangle) {
  ComparisonGraph g(3);
  TopologyTracker tracker;
  tracker.add_vertices(3);
  EXPECT_EQ(tracker.betti(), (BettiNumbers{3, 0}));
  tracker.observe(g, g.add_comparison(0, 0, 1, 1));
  tracker.observe(g, g.add_comparison(0, 1, 2, 1));
  EXPECT_EQ(tracker.betti(), (BettiNumbers{1, 0}));
  tracker.observe(g, g.add_comparison(0, 0, 2, 1));
  EXPECT_EQ(tracker.betti(), (BettiNumbers{1, 0}));
  // Edge then triangle at the same seq: the loop opens and closes.
  const auto& events = tracker.timeline().events;
  ASSERT_EQ(events.size(), 7u);
  EXPECT_EQ(events[5].kind, SimplexKind::kEdge);
  EXPECT_EQ(events[5].beta1, 1);
  EXPECT_EQ(events[6].kind, SimplexKind::kTriangle);
  EXPECT_EQ(events[6].seq, 3);
  EXPECT_EQ(events[6].beta1, 0);
}

TEST(Tracker, SquareThenDiagonal) {
  ComparisonGraph g(4);
  TopologyTracker tracker;
  tracker.add_vertices(4);
  for (int i = 0; i < 4; ++i) {
    tracker.observe(g, g.add_comparison(0, i, (i + 1) % 4, 1));
  }
  EXPECT_EQ(tracker.betti(), (BettiNumbers{1, 1}));
  tracker.observe(g, g.add_comparison(0, 0, 1, -1));
  EXPECT_EQ(tracker.betti(), (BettiNumbers{1, 1}));
  tracker.observe(g, g.add_comparison(0, 0, 2, 1));
  EXPECT_EQ(tracker.betti(), (BettiNumbers{1, 0}));
  EXPECT_EQ(tracker.timeline().at(4), (BettiNumbers{1, 1}));
  EXPECT_EQ(tracker.timeline().at(0), (BettiNumbers{4, 0}));
  EXPECT_EQ(tracker.timeline().at(-1), (BettiNumbers{0, 0}));
}

TEST(Tracker, RejectsFaceOrderViolations) {
  TopologyTracker tracker;
  tracker.add(Simplex::vertex(0, 0));
  EXPECT_THROW(tracker.add(Simplex::vertex(0, 0)), FaceOrderError);
  EXPECT_THROW(tracker.add(Simplex::edge(0, 1, 1)), FaceOrderError);
  tracker.add(Simplex::vertex(1, 0));
  tracker.add(Simplex::vertex(2, 0));
  tracker.add(Simplex::edge(0, 1, 1));
  EXPECT_THROW(tracker.add(Simplex::edge(1, 0, 2)), FaceOrderError);
  EXPECT_THROW(tracker.add(Simplex::triangle(0, 1, 2, 2)), FaceOrderError);
  EXPECT_THROW(tracker.add(Simplex::edge(2, 2, 2)), FaceOrderError);
}

TEST(Oracle, KnownComplexes) {
  // Octahedron: every 3-clique is a face, the complex is a 2-sphere.
  std::vector<std::array<int, 2>> edges;
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      if (b != a + 3) edges.push_back({a, b});
    }
  }
  std::vector<std::array<int, 3>> triangles;
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      for (int c = b + 1; c < 6; ++c) {
        if (b != a + 3 && c != a + 3 && c != b + 3) triangles.push_back({a, b, c});
      }
    }
  }
  ASSERT_EQ(triangles.size(), 8u);
  EXPECT_EQ(betti_oracle(6, edges, triangles), (BettiNumbers{1, 0}));

  const std::vector<std::array<int, 2>> pentagon = {
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  EXPECT_EQ(betti_oracle(7, pentagon, {}), (BettiNumbers{3, 1}));
  const std::vector<std::array<int, 3>> bad = {{0, 1, 3}};
  EXPECT_THROW(betti_oracle(7, pentagon, bad), std::invalid_argument);
}

TEST(Tracker, MatchesOracleOnEveryPrefix) {
  Rng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(8));
    const ComparisonGraph g = random_graph(rng, n, 40, ValueMode::kBinary);
    const std::vector<Simplex> stream = filtration(g);
    const TopologyTimeline timeline = track(stream);
    ASSERT_EQ(timeline.events.size(), stream.size());
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
      ASSERT_EQ(timeline.events[k].beta0, oracle.beta0) << trial << ":" << k;
      ASSERT_EQ(timeline.events[k].beta1, oracle.beta1) << trial << ":" << k;
    }
    EXPECT_EQ(timeline.at(g.num_records()), betti_oracle(g));
  }
}

TEST(Timeline, CsvFormat) {
  TopologyTracker tracker;
  tracker.add_vertices(2);
  tracker.add(Simplex::edge(0, 1, 1));
  std::ostringstream out;
  write_timeline_csv(out, tracker.timeline());
  EXPECT_EQ(out.str(),
            "seq,kind,beta0,beta1\n0,vertex,1,0\n0,vertex,2,0\n1,edge,1,0\n");
}

TEST(Timeline, EnsembleMeans) {
  TopologyTracker a;
  a.add_vertices(3);
  a.add(Simplex::edge(0, 1, 1));
  TopologyTracker b;
  b.add_vertices(3);
  b.add(Simplex::edge(0, 1, 2));
  const TopologyTimeline timelines[] = {a.timeline(), b.timeline()};
  const std::int64_t budgets[] = {0, 1, 2};
  const BettiCurve curve = loop_free_fraction(timelines, budgets);
  EXPECT_EQ(curve.mean_beta0, (std::vector<double>{3.0, 2.5, 2.0}));
  EXPECT_EQ(curve.mean_beta1, (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_THROW(loop_free_fraction({}, budgets), std::invalid_argument);
}

}  // namespace
}  // namespace hrank
