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
#include "core/pruner.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace cckg {
namespace {

using namespace cckg::testing;

using testing::EdgeSpec;
using testing::MakeCckg;
using testing::NodeSpec;

std::vector<char> Alive(const Cckg& g) { return std::vector<char>(g.nodes.size(), 1); }

PruneRanking RankingFrom(const std::vector<uint32_t>& ascending) {
  PruneRanking r;
  for (size_t i = 0; i < ascending.size(); ++i) r.order.emplace_back(ascending[i], static_cast<double>(i));
  return r;
}

PruneRanking RandomRanking(std::mt19937_64& rng, size_t n) {
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return RankingFrom(order);
}

// P - a - b - C with P - c - C, and a tail a - d - e.
Cckg SevenNodes() {
  return MakeCckg({{"p", Role::kPremise},
                   {"q", Role::kConclusion},
                   {"a", Role::kIntermediate},
                   {"b", Role::kIntermediate},
                   {"c", Role::kIntermediate},
                   {"d", Role::kIntermediate},
                   {"e", Role::kIntermediate}},
                  {{0, 2, "R", 0.1}, {2, 3, "R", 0.2}, {3, 1, "R", 0.3}, {0, 4, "R", 0.4},
                   {4, 1, "R", 0.5}, {2, 5, "R", 0.6}, {5, 6, "R", 0.7}});
}

TEST(Pruner, HandFixtureDeletionSequence) {
  const auto g = SevenNodes();
  const auto ranking = RankingFrom({3, 5, 6, 2, 4, 0, 1});
  EXPECT_EQ(SimilarityDeletionSequence(g, ranking), (std::vector<uint32_t>{3, 6, 5, 2}));
  const auto full = Prune(g, ranking, 1.0);
  ASSERT_EQ(full.nodes.size(), 3u);
  EXPECT_TRUE(full.FindNode("c").has_value());
  EXPECT_EQ(full.edges.size(), 2u);
  ASSERT_TRUE(full.pruned_concepts.has_value());
  EXPECT_EQ(*full.pruned_concepts, (std::vector<std::string>{"b", "e", "d", "a"}));
  const auto half = Prune(g, ranking, 0.5);
  EXPECT_EQ(half.nodes.size(), 5u);
  EXPECT_FALSE(half.FindNode("b").has_value());
  EXPECT_FALSE(half.FindNode("e").has_value());
}

TEST(Pruner, ZeroFractionIsIdentity) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::RandomCckg(rng, 10, 15, 3);
    const auto p = Prune(g, RandomRanking(rng, g.nodes.size()), 0.0);
    EXPECT_EQ(CckgToJson(p), CckgToJson(RemoveNodes(g, {})));
    EXPECT_EQ(p.nodes.size(), g.nodes.size());
    EXPECT_EQ(p.edges.size(), g.edges.size());
  }
}

TEST(Pruner, ChainSeparatorIsKept) {
  const auto g = MakeCckg({{"p", Role::kPremise}, {"x", Role::kIntermediate}, {"c", Role::kConclusion}},
                          {{0, 1, "R", -0.9}, {1, 2, "R", -0.9}});
  const auto pruned = Prune(g, RankingFrom({1, 0, 2}), 1.0);
  EXPECT_EQ(pruned.nodes.size(), 3u);
  // Negative control: forcing the deletion splits the graph.
  const auto forced = RemoveNodes(g, std::vector<uint32_t>{1});
  EXPECT_EQ(ComponentCount(forced, Alive(forced)), 2u);
  EXPECT_EQ(ComponentCount(g, Alive(g)), 1u);
}

TEST(Pruner, PropertySuite) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::RandomCckg(rng, 12, 18, 4);
    const auto ranking = RandomRanking(rng, g.nodes.size());
    const size_t base_components = ComponentCount(g, Alive(g));
    Cckg prev = Prune(g, ranking, 0.0);
    for (double f : {0.25, 0.5, 0.75, 1.0}) {
      const auto p = Prune(g, ranking, f);
      for (const auto& node : g.nodes) {
        if (IsAnchorRole(node.role)) EXPECT_TRUE(p.FindNode(node.label).has_value());
      }
      EXPECT_LE(ComponentCount(p, Alive(p)), base_components);
      for (const auto& node : p.nodes) EXPECT_TRUE(prev.FindNode(node.label).has_value()) << f;
      EXPECT_NO_THROW(ValidateCckg(p));
      prev = p;
    }
    // Idempotence: a fully pruned graph has nothing left to delete.
    std::vector<uint32_t> left;
    for (const auto& [node, score] : ranking.order) {
      if (auto i = prev.FindNode(g.nodes[node].label)) left.push_back(*i);
    }
    EXPECT_TRUE(SimilarityDeletionSequence(prev, RankingFrom(left)).empty());
    EXPECT_TRUE(PageRankDeletionSequence(PruneByPageRank(g, 1.0)).empty());
  }
}

TEST(PageRank, MatchesLinearSolve) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::RandomCckg(rng, 10, 16, 3);
    for (double d : {0.5, 0.85}) {
      const auto got = PageRank(g, {}, d);
      const auto want = PageRankOracle(g, d);
      for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-8);
    }
  }
}

TEST(PageRank, CycleTiesFallBackToIds) {
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  for (uint32_t i = 0; i < 6; ++i) {
    nodes.push_back({"n" + std::to_string(i), Role::kIntermediate});
    edges.push_back({i, (i + 1) % 6, "R", 0.0});
  }
  const auto r = RankByPageRank(MakeCckg(nodes, edges));
  for (uint32_t i = 0; i < 6; ++i) EXPECT_EQ(r.order[i].first, i);
}

TEST(PageRank, StarCenterIsNeverLowest) {
  std::vector<NodeSpec> nodes = {{"hub", Role::kIntermediate}};
  std::vector<EdgeSpec> edges;
  for (uint32_t i = 1; i < 7; ++i) {
    nodes.push_back({"leaf" + std::to_string(i), Role::kIntermediate});
    edges.push_back({0, i, "R", 0.0});
  }
  const auto r = RankByPageRank(MakeCckg(nodes, edges));
  EXPECT_NE(r.order.front().first, 0u);
  EXPECT_EQ(r.order.back().first, 0u);
}

TEST(Pruner, RankingMismatchIsAnError) {
  const auto g = SevenNodes();
  EXPECT_THROW(Prune(g, RankingFrom({0, 1, 2}), 1.0), Error);
  EXPECT_THROW(Prune(g, RankingFrom({0, 1, 2, 3, 4, 5, 5}), 1.0), Error);
  EXPECT_THROW(Prune(g, RankingFrom({0, 1, 2, 3, 4, 5, 9}), 1.0), Error);
  EXPECT_THROW(Prune(g, RankingFrom({0, 1, 2, 3, 4, 5, 6}), 1.5), Error);
  EXPECT_THROW(PageRank(g, {}, 1.0), Error);
}

TEST(Pruner, DeletionCountRounding) {
  EXPECT_EQ(DeletionCount(0.0, 7), 0u);
  EXPECT_EQ(DeletionCount(0.75, 4), 3u);
  EXPECT_EQ(DeletionCount(0.5, 3), 2u);
  EXPECT_EQ(DeletionCount(1.0, 5), 5u);
  EXPECT_EQ(DeletionCount(0.1, 0), 0u);
}

}  // namespace
}  // namespace cckg
