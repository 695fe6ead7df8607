/*
 * Copyright 2026 The cckg Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/features.hpp"
#include "core/graph_stats.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace cckg {
namespace {

using namespace cckg::testing;

using testing::EdgeSpec;
using testing::MakeCckg;
using testing::NodeSpec;

// Two premise and two conclusion anchors joined through two intermediates.
Cckg SurgeryGraph() {
  return MakeCckg({{"plastic_surgery", Role::kPremise},
                   {"medical_procedure", Role::kPremise},
                   {"happiness", Role::kConclusion},
                   {"emotion", Role::kConclusion},
                   {"looking_better", Role::kIntermediate},
                   {"self_esteem", Role::kIntermediate}},
                  {{0, 1, "IsA", 0.6},
                   {0, 4, "Causes", 0.8},
                   {4, 2, "Causes", 0.7},
                   {2, 3, "IsA", 0.5},
                   {4, 5, "MotivatedByGoal", 0.4},
                   {5, 3, "RelatedTo", 0.2}});
}

SimpleGraph Unit(size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& ends) {
  std::vector<WeightedEdge> edges;
  for (const auto& [a, b] : ends) edges.push_back({a, b, 1.0});
  return SimpleGraph::Collapse(n, edges);
}

TEST(SizeFeatures, SurgeryGraphCounts) {
  const auto f = SizeFeatures(SurgeryGraph());
  EXPECT_EQ(f, (std::array<double, 5>{6, 6, 2, 2, 0}));
}

TEST(SizeFeatures, SingleSharedAnchor) {
  const auto g = MakeCckg({{"x", Role::kBoth}}, {});
  EXPECT_EQ(SizeFeatures(g), (std::array<double, 5>{1, 0, 1, 1, 1}));
  EXPECT_EQ(ConnectivityFeatures(g), (std::array<double, 6>{1, 1, 0, 0, 0, 0}));
}

TEST(Connectivity, TriangleAndPath) {
  const auto tri = Unit(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(Density(tri), 1.0);
  EXPECT_EQ(Transitivity(tri), 1.0);
  const auto path = Unit(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(Transitivity(path), 0.0);
  EXPECT_DOUBLE_EQ(Density(path), 2.0 / 3.0);
}

TEST(Connectivity, BridgedTrianglesGiveTwoClusters) {
  const auto g = Unit(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  const auto c = GreedyModularity(g);
  EXPECT_EQ(c.count, 2u);
  EXPECT_EQ(c.community[0], c.community[2]);
  EXPECT_NE(c.community[2], c.community[3]);
  // Hand value: two communities of 7/2 edges each minus the bridge.
  EXPECT_NEAR(c.modularity, 2 * (3.0 / 7.0 - 0.25), 1e-12);
  const auto oracle = NaiveGreedy(g);
  EXPECT_EQ(oracle.count, 2u);
  EXPECT_NEAR(oracle.modularity, c.modularity, 1e-12);
}

TEST(Connectivity, GreedyMatchesNaiveOracleOnWeightedGraphs) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ends = testing::RandomConnectedGraph(rng, 9, 14);
    std::vector<WeightedEdge> edges;
    for (const auto& [a, b] : ends) edges.push_back({a, b, w(rng)});
    const auto g = SimpleGraph::Collapse(9, edges);
    const auto got = GreedyModularity(g);
    const auto want = NaiveGreedy(g);
    EXPECT_EQ(got.count, want.count);
    EXPECT_NEAR(got.modularity, want.modularity, 1e-9);
    EXPECT_GE(got.modularity, -0.5);
    EXPECT_LE(got.modularity, 1.0);
  }
}

TEST(Distance, SingleEdge) {
  const auto g = MakeCckg({{"p", Role::kPremise}, {"c", Role::kConclusion}}, {{0, 1, "R", 0.0}});
  EXPECT_EQ(DistanceFeatures(g), (std::array<double, 4>{0.5, 1.0, 0.5, 0.5}));
}

TEST(Distance, SharedAnchorSentinel) {
  const auto g = MakeCckg({{"p", Role::kPremise}, {"x", Role::kBoth}, {"c", Role::kConclusion}},
                          {{0, 1, "R", 0.2}, {1, 2, "R", 0.4}});
  const auto f = DistanceFeatures(g);
  EXPECT_DOUBLE_EQ(f[0], 0.6 + 0.7 + 1.0);
  EXPECT_EQ(f[1], 3.0);
}

TEST(Distance, UnreachableSentinel) {
  const auto g = MakeCckg({{"p", Role::kPremise}, {"q", Role::kIntermediate}, {"c", Role::kConclusion}},
                          {{0, 1, "R", 0.0}});
  const auto f = DistanceFeatures(g);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 0.0);
  EXPECT_EQ(f[2], 0.5 + 1.0);
  EXPECT_EQ(f[3], 0.5 + 1.0);
}

TEST(Distance, MinCutMatchesExhaustiveBipartitions) {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const uint32_t n = 4 + trial % 7;
    const auto ends = testing::RandomConnectedGraph(rng, n, n + trial % 9);
    std::vector<WeightedEdge> edges;
    for (const auto& [a, b] : ends) edges.push_back({a, b, w(rng)});
    std::vector<uint32_t> order(n);
    for (uint32_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const std::vector<uint32_t> src(order.begin(), order.begin() + 1 + trial % 2);
    const std::vector<uint32_t> snk(order.begin() + 2, order.begin() + 3 + trial % 2);
    EXPECT_NEAR(MinCut(n, edges, src, snk), BruteForceCut(n, edges, src, snk), 1e-12);
  }
}

// Rebuilds `g` with shuffled nodes, edges and concept ids.
Cckg Permute(const Cckg& g, std::mt19937_64& rng) {
  std::vector<uint32_t> perm(g.nodes.size());
  for (uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Cckg out = g;
  out.paths.clear();
  for (uint32_t i = 0; i < perm.size(); ++i) {
    out.nodes[perm[i]] = g.nodes[i];
    out.nodes[perm[i]].concept_id = 100 + perm[i];
  }
  for (auto& e : out.edges) {
    e.head = perm[e.head];
    e.tail = perm[e.tail];
  }
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

TEST(Features, InvariantUnderRelabeling) {
  std::mt19937_64 rng(83);
  const std::vector<float> p = {1, 0, 0}, c = {0.6f, 0.8f, 0};
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::RandomCckg(rng, 10, 10 + trial % 8, 4);
    // Quantized similarities create modularity ties.
    auto q = g;
    if (trial % 2 == 0) {
      for (auto& e : q.edges) {
        e.s_a = std::round(e.s_a * 2.0) / 2.0;
        e.weight = EdgeWeight(e.s_a);
      }
    }
    const auto base = ComputeFeatures(q, p, c, {});
    for (int k = 0; k < 3; ++k) {
      const auto f = ComputeFeatures(Permute(q, rng), p, c, {});
      for (size_t i = 0; i < kFeatureCount; ++i) EXPECT_NEAR(f[i], base[i], 1e-9) << kFeatureNames[i];
    }
    EXPECT_LE(base[13], base[14]);
    if (base[4] == 0) EXPECT_LE(base[12], base[1]);
    EXPECT_GE(base[9], 0.0);
    EXPECT_LE(base[9], 1.0);
    EXPECT_GE(base[10], 0.0);
    EXPECT_LE(base[10], 1.0);
  }
}

TEST(TextFeatures, SimilarityAndNli) {
  const std::vector<float> a = {1, 0}, b = {0, 1};
  EXPECT_EQ(TextFeatures(a, b, {})[0], 0.0);
  EXPECT_EQ(TextFeatures(a, a, {})[0], 1.0);
  const auto mock = TextFeatures(a, a, {});
  EXPECT_EQ(mock[1], 1.0 / 3.0);
  EXPECT_EQ(mock[2], 1.0 / 3.0);
  EXPECT_EQ(mock[3], 1.0 / 3.0);
  EXPECT_THROW(TextFeatures(a, a, {0.5, 0.5, 0.5}), Error);
  EXPECT_THROW(TextFeatures(a, a, {1.2, -0.1, -0.1}), Error);
  EXPECT_NO_THROW(TextFeatures(a, a, {0.7, 0.2, 0.10005}));
  EXPECT_EQ(kFeatureNames.size(), 19u);
  EXPECT_EQ(kFeatureNames[15], "pc_similarity");
}

TEST(ExportMatrix, RoundTripAndLineCounts) {
  testing::TempDir dir;
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<FeatureRow> rows(3);
  for (size_t r = 0; r < 3; ++r) {
    rows[r].id = "arg" + std::to_string(r);
    for (auto& v : rows[r].values) v = u(rng);
    rows[r].label = r % 2 ? "valid" : "invalid";
  }
  const auto path = dir.path() / "features.csv";
  EXPECT_EQ(ExportMatrix(rows, path), 3u);
  const auto text = testing::ReadText(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  const auto back = ParseMatrix(text);
  ASSERT_EQ(back.size(), 3u);
  for (size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(back[r].id, rows[r].id);
    EXPECT_EQ(back[r].label, rows[r].label);
    for (size_t i = 0; i < kFeatureCount; ++i) EXPECT_NEAR(back[r].values[i], rows[r].values[i], 1e-9);
  }
  const auto empty = dir.path() / "empty.csv";
  EXPECT_EQ(ExportMatrix({}, empty), 0u);
  const auto header = testing::ReadText(empty);
  EXPECT_EQ(std::count(header.begin(), header.end(), '\n'), 1);
  EXPECT_EQ(header.rfind("id,n_concepts,", 0), 0u);
}

}  // namespace
}  // namespace cckg
