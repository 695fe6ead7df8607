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
#include <map>
#include <random>
#include <set>

#include "core/embed_store.hpp"
#include "core/error.hpp"
#include "core/extractor.hpp"
#include "core/verbalizer.hpp"
#include "test_support.hpp"

namespace cckg {
namespace {

using namespace cckg::testing;

TEST(WeightLaw, GridIsExact) {
  const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const double want[] = {1.0, 0.75, 0.5, 0.25, 0.0};
  for (int i = 0; i < 5; ++i) EXPECT_EQ(EdgeWeight(grid[i]), want[i]);
  for (double s = -1.0; s < 1.0; s += 0.01) {
    EXPECT_GT(EdgeWeight(s), EdgeWeight(s + 0.01));
    EXPECT_GE(EdgeWeight(s), 0.0);
    EXPECT_LE(EdgeWeight(s), 1.0);
  }
}

TEST(SelectAnchors, HandSetScoresWithTieBreak) {
  const auto kg = MakeKg({{"a", "r", "b"}, {"b", "r", "c"}, {"c", "r", "d"}, {"d", "r", "e"}, {"e", "r", "a"}});
  TripletScores s;
  s.premise = {0.1, 0.9, 0.9, 0.2, 0.3};     // tie between 1 and 2 -> 1
  s.conclusion = {0.8, 0.1, 0.1, 0.1, 0.7};  // top 0 then 4
  s.argument.assign(5, 0.0);
  const auto m1 = SelectAnchors(kg, s, 1);
  EXPECT_EQ(m1.premise_triplets, (std::vector<TripletId>{1}));
  EXPECT_EQ(m1.conclusion_triplets, (std::vector<TripletId>{0}));
  EXPECT_EQ(m1.premise, (std::vector<ConceptId>{1, 2}));     // b, c
  EXPECT_EQ(m1.conclusion, (std::vector<ConceptId>{0, 1}));  // a, b
  EXPECT_EQ(m1.RoleOf(1), Role::kBoth);
  const auto m2 = SelectAnchors(kg, s, 2);
  EXPECT_EQ(m2.premise_triplets, (std::vector<TripletId>{1, 2}));
  EXPECT_EQ(m2.conclusion_triplets, (std::vector<TripletId>{0, 4}));
  EXPECT_EQ(m2.premise, (std::vector<ConceptId>{1, 2, 3}));
  EXPECT_EQ(m2.conclusion, (std::vector<ConceptId>{0, 1, 4}));
}

TEST(SelectAnchors, SameArgmaxGivesTwoBothConcepts) {
  const auto kg = MakeKg({{"a", "r", "b"}, {"b", "r", "c"}});
  TripletScores s{{0.9, 0.1}, {0.8, 0.2}, {0, 0}};
  const auto a = SelectAnchors(kg, s, 1);
  EXPECT_EQ(a.All().size(), 2u);
  for (ConceptId c : a.All()) EXPECT_EQ(a.RoleOf(c), Role::kBoth);
}

TEST(SelectAnchors, BoundHoldsForRandomScores) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto kg = RandomKg(rng, 12, 20);
    const auto s = RandomScores(rng, kg.triplet_count());
    for (size_t m : {1u, 2u, 3u}) {
      const auto a = SelectAnchors(kg, s, m);
      std::set<TripletId> selected(a.premise_triplets.begin(), a.premise_triplets.end());
      selected.insert(a.conclusion_triplets.begin(), a.conclusion_triplets.end());
      EXPECT_LE(selected.size(), 2 * m);
      EXPECT_LE(a.All().size(), 4 * m);
    }
  }
}

TEST(SelectAnchors, ClampsWhenMExceedsTriplets) {
  const auto kg = MakeKg({{"a", "r", "b"}, {"b", "r", "c"}});
  TripletScores s{{0.1, 0.2}, {0.3, 0.4}, {0, 0}};
  const auto a = SelectAnchors(kg, s, 5);
  EXPECT_TRUE(a.clamped);
  EXPECT_EQ(a.premise_triplets.size(), 2u);
  EXPECT_THROW(SelectAnchors(kg, s, 0), Error);
}

TEST(SelectAnchors, ConstituentsSelectPerSpanAndFallBackPerSide) {
  const auto kg = MakeKg({{"a", "r", "b"}, {"b", "r", "c"}, {"c", "r", "d"}, {"d", "r", "e"}});
  TripletScores s{{0.9, 0, 0, 0}, {0, 0, 0, 0.9}, {0, 0, 0, 0}};
  std::vector<ConstituentScores> cs = {{"x", Side::kPremise, {0, 0.5, 0, 0}},
                                       {"y", Side::kPremise, {0, 0, 0.5, 0}}};
  const auto a = SelectAnchors(kg, s, 1, cs);
  EXPECT_EQ(a.premise_triplets, (std::vector<TripletId>{1, 2}));
  EXPECT_EQ(a.conclusion_triplets, (std::vector<TripletId>{3}));
  EXPECT_EQ(a.constituent_triplets.size(), 2u);
}

TEST(AnchorPairs, AllVersusCross) {
  Anchors a;
  a.premise = {0, 1};
  a.conclusion = {1, 2};
  EXPECT_EQ(AnchorPairs(a, PairMode::kAll).size(), 3u);
  const auto cross = AnchorPairs(a, PairMode::kCross);
  const std::vector<std::pair<ConceptId, ConceptId>> want = {{0, 1}, {0, 2}, {1, 2}};
  EXPECT_EQ(cross, want);
  a.premise = {0, 3};
  a.conclusion = {1};
  EXPECT_EQ(AnchorPairs(a, PairMode::kCross).size(), 2u);
  EXPECT_EQ(AnchorPairs(a, PairMode::kAll).size(), 3u);
}

TEST(BuildCckg, StructuralInvariants) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const auto kg = RandomKg(rng, 14, 26);
    const auto s = RandomScores(rng, kg.triplet_count());
    const auto anchors = SelectAnchors(kg, s, 2);
    ExtractOptions opts;
    const auto g = BuildCckg(kg, s.argument, anchors, opts);
    ASSERT_NO_THROW(ValidateCckg(g));
    std::set<uint32_t> on_path_edges, on_path_nodes;
    for (const auto& p : g.paths) {
      on_path_edges.insert(p.edges.begin(), p.edges.end());
      on_path_nodes.insert(p.source);
      on_path_nodes.insert(p.target);
      for (uint32_t e : p.edges) {
        on_path_nodes.insert(g.edges[e].head);
        on_path_nodes.insert(g.edges[e].tail);
      }
    }
    EXPECT_EQ(on_path_edges.size(), g.edges.size());
    for (uint32_t i = 0; i < g.nodes.size(); ++i) {
      EXPECT_TRUE(on_path_nodes.count(i) || IsAnchorRole(g.nodes[i].role));
    }
    for (const auto& e : g.edges) EXPECT_EQ(e.weight, (1.0 - e.s_a) / 2.0);
    EXPECT_EQ(g.skipped_pairs, 0u);
    // Connected since every pair was reachable.
    std::vector<char> alive(g.nodes.size(), 1);
    const auto adj = g.BuildAdjacency();
    std::vector<char> seen(g.nodes.size(), 0);
    std::vector<uint32_t> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      const uint32_t u = stack.back();
      stack.pop_back();
      for (const auto& inc : adj.neighbors(u)) {
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
      }
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), static_cast<long>(g.nodes.size()));
  }
}

TEST(BuildCckg, PathsAreOptimalAgainstBruteForce) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto kg = RandomKg(rng, 9, 14);
    const auto s = RandomScores(rng, kg.triplet_count());
    const auto anchors = SelectAnchors(kg, s, 1);
    const auto g = BuildCckg(kg, s.argument, anchors, {});
    const auto w = EdgeWeights(s.argument);
    testing::Endpoints ends;
    for (const auto& t : kg.triplets()) ends.push_back({t.head, t.tail});
    for (const auto& p : g.paths) {
      const auto src = static_cast<uint32_t>(g.nodes[p.source].concept_id);
      const auto dst = static_cast<uint32_t>(g.nodes[p.target].concept_id);
      double best = 1e300;
      for (const auto& bp : testing::AllSimplePaths(kg.concept_count(), ends, src, dst)) {
        best = std::min(best, testing::SumInOrder(w, bp));
      }
      EXPECT_EQ(p.cost, best);
    }
  }
}

TEST(BuildCckg, RescalingCostsKeepsEdgeSets) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto kg = RandomKg(rng, 12, 22);
    const auto s = RandomScores(rng, kg.triplet_count());
    const auto anchors = SelectAnchors(kg, s, 2);
    const auto base = EdgeSet(BuildCckg(kg, s.argument, anchors, {}));
    for (double c : {0.5, 2.0, 3.7, 10.0}) {
      std::vector<double> costs;
      for (double x : s.argument) costs.push_back(c * (1.0 - x));
      EXPECT_EQ(EdgeSet(BuildCckgWithCosts(kg, s.argument, costs, anchors, {})), base) << c;
    }
  }
}

TEST(BuildCckg, UnreachablePairsAreSkippedAndCounted) {
  const auto kg = MakeKg({{"a", "r", "b"}, {"c", "r", "d"}});
  TripletScores s{{0.9, 0.0}, {0.0, 0.9}, {0.5, 0.5}};
  const auto anchors = SelectAnchors(kg, s, 1);
  const auto g = BuildCckg(kg, s.argument, anchors, {});
  // Pairs: a-b, a-c, a-d, b-c, b-d, c-d; only a-b and c-d are reachable.
  EXPECT_EQ(g.skipped_pairs, 4u);
  EXPECT_EQ(g.paths.size(), 2u);
  EXPECT_EQ(g.nodes.size(), 4u);
}

TEST(BuildCckg, UnweightedAllContainsUnweightedOne) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const auto kg = RandomKg(rng, 12, 24);
    const auto s = RandomScores(rng, kg.triplet_count());
    const auto anchors = SelectAnchors(kg, s, 2);
    ExtractOptions all;
    all.mode = SearchMode::kUnweightedAll;
    const auto big = EdgeSet(BuildCckg(kg, s.argument, anchors, all));
    for (uint64_t seed = 0; seed < 5; ++seed) {
      ExtractOptions one;
      one.mode = SearchMode::kUnweightedOne;
      one.seed = seed;
      const auto small = EdgeSet(BuildCckg(kg, s.argument, anchors, one));
      EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
      EXPECT_EQ(small, EdgeSet(BuildCckg(kg, s.argument, anchors, one)));
    }
  }
}

TEST(BuildCckg, YenKTwoExtendsKOne) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto kg = RandomKg(rng, 10, 18);
    const auto s = RandomScores(rng, kg.triplet_count());
    const auto anchors = SelectAnchors(kg, s, 1);
    ExtractOptions k2;
    k2.k = 2;
    const auto one = EdgeSet(BuildCckg(kg, s.argument, anchors, {}));
    const auto two = EdgeSet(BuildCckg(kg, s.argument, anchors, k2));
    EXPECT_TRUE(std::includes(two.begin(), two.end(), one.begin(), one.end()));
  }
}

TEST(ParseQuery, SidesFromFieldOrContainment) {
  const auto q = ParseQuery(
      R"({"id":"x","premise":"people desire freedom","conclusion":"drugs give freedom",)"
      R"("constituents":[{"text":"people","is_leaf":true},{"text":"drugs give","is_leaf":false},)"
      R"({"text":"whatever","is_leaf":false,"side":"premise"}]})");
  ASSERT_EQ(q.constituents.size(), 3u);
  EXPECT_EQ(q.constituents[0].side, Side::kPremise);
  EXPECT_EQ(q.constituents[1].side, Side::kConclusion);
  EXPECT_EQ(q.constituents[2].side, Side::kPremise);
  EXPECT_EQ(q.ArgumentText(), "people desire freedom drugs give freedom");
  EXPECT_THROW(ParseQuery(R"({"id":"x","premise":"a"})"), Error);
  EXPECT_THROW(ParseQuery(R"({"id":"x","premise":"a","conclusion":"b","constituents":[{"text":"zzz","is_leaf":false}]})"),
               Error);
}

// Hand-built 12-triplet KG: the on-topic chain through "looking better"
// competes with an off-topic chain of equal length.
class SurgeryFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    kg_ = MakeKg({{"plastic_surgery", "IsA", "medical_procedure"},
                  {"plastic_surgery", "Causes", "looking_better"},
                  {"looking_better", "Causes", "happiness"},
                  {"plastic_surgery", "AtLocation", "clinic"},
                  {"clinic", "HasA", "waiting_room"},
                  {"waiting_room", "RelatedTo", "happiness"},
                  {"happiness", "IsA", "emotion"},
                  {"medical_procedure", "HasProperty", "expensive"},
                  {"clinic", "AtLocation", "city"},
                  {"emotion", "RelatedTo", "feeling"},
                  {"city", "HasA", "traffic"},
                  {"looking_better", "MotivatedByGoal", "self_esteem"}});
    templates_ = TemplateSet::Load(std::filesystem::path(CCKG_TEST_DATA_DIR) / "templates" /
                                   "conceptnet_natural.tsv");
    std::vector<std::string> sentences;
    for (TripletId t = 0; t < kg_.triplet_count(); ++t) sentences.push_back(Verbalize(kg_, t, templates_));
    embeddings_ = EncodeAll(encoder_, sentences);
  }

  KnowledgeGraph kg_;
  TemplateSet templates_;
  MockEncoder encoder_{128};
  EmbeddingMatrix embeddings_;
};

TEST_F(SurgeryFixture, OnTopicChainIsSelected) {
  Query q;
  q.id = "surgery";
  q.premise = "plastic surgery is a medical procedure";
  q.conclusion = "happiness is an emotion";
  const auto g = Extract(kg_, embeddings_, encoder_, q, {});
  // Oracle: recompute s_A from the encoder and compare both chains by hand.
  const auto arg = encoder_.Encode(q.ArgumentText());
  auto w = [&](TripletId t) { return (1.0 - Dot(embeddings_.row(t), arg)) / 2.0; };
  const double on_topic = w(1) + w(2);
  const double off_topic = w(3) + w(4) + w(5);
  ASSERT_LT(on_topic, off_topic);
  const auto edges = EdgeSet(g);
  EXPECT_TRUE(edges.count(1));
  EXPECT_TRUE(edges.count(2));
  EXPECT_FALSE(edges.count(4));
  EXPECT_FALSE(edges.count(5));
  ASSERT_TRUE(g.FindNode("plastic_surgery").has_value());
  EXPECT_EQ(g.nodes[*g.FindNode("plastic_surgery")].role, Role::kPremise);
  EXPECT_EQ(g.nodes[*g.FindNode("happiness")].role, Role::kConclusion);
  EXPECT_EQ(g.nodes[*g.FindNode("looking_better")].role, Role::kIntermediate);
}

TEST_F(SurgeryFixture, DeterministicAcrossCalls) {
  Query q{"surgery", "plastic surgery is a medical procedure", "happiness is an emotion", {}};
  EXPECT_EQ(CckgToJson(Extract(kg_, embeddings_, encoder_, q, {})),
            CckgToJson(Extract(kg_, embeddings_, encoder_, q, {})));
}

TEST_F(SurgeryFixture, AlignmentMismatchIsAnError) {
  Query q{"surgery", "plastic surgery", "happiness", {}};
  const auto short_emb = EncodeAll(encoder_, std::vector<std::string>{"only one row"});
  try {
    Extract(kg_, short_emb, encoder_, q, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAlignment);
  }
  const MockEncoder other(64);
  EXPECT_THROW(Extract(kg_, embeddings_, other, q, {}), Error);
}

TEST_F(SurgeryFixture, JsonRoundTrip) {
  Query q{"surgery", "plastic surgery is a medical procedure", "happiness is an emotion", {}};
  const auto g = Extract(kg_, embeddings_, encoder_, q, {});
  const auto text = CckgToJson(g);
  const auto back = CckgFromJson(text);
  EXPECT_EQ(CckgToJson(back), text);
  const auto dot = CckgToDot(g);
  EXPECT_NE(dot.find("violet"), std::string::npos);
  EXPECT_NE(dot.find("orange"), std::string::npos);
}

}  // namespace
}  // namespace cckg
