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
#include <numeric>
#include <random>

#include "core/assignment.hpp"
#include "core/embed_store.hpp"
#include "core/error.hpp"
#include "core/ged.hpp"
#include "core/metrics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace cckg {
namespace {

using namespace cckg::testing;

LabeledGraph Graph(const std::vector<LabeledTriplet>& t, const std::vector<std::string>& extra = {}) {
  return MakeLabeledGraph(t, extra);
}

ScoreContext MockContext(const MockEncoder& enc) {
  return {MakeVerbalizer(nullptr), EmbeddingSimilarity(enc), {}};
}

const LabeledGraph& Sample() {
  static const auto g = Graph({{"cannabis", "IsA", "drug"},
                               {"cannabis", "Causes", "relaxation"},
                               {"legalization", "HasSubevent", "regulation"}});
  return g;
}

TEST(Metrics, NormalizeRelation) {
  EXPECT_EQ(NormalizeRelation("Has Subevent"), "hassubevent");
  EXPECT_EQ(NormalizeRelation("has_sub-event"), "hassubevent");
}

TEST(Metrics, IdentityScoresArePerfect) {
  const MockEncoder enc(64);
  const auto s = ScorePair(Sample(), Sample(), MockContext(enc));
  for (double v : {s.concepts.precision, s.concepts.recall, s.concepts.f1, s.triplets.precision,
                   s.triplets.recall, s.triplets.f1, s.gbs}) {
    EXPECT_EQ(v, 1.0);
  }
  EXPECT_EQ(s.ged, 0.0);
  EXPECT_TRUE(s.ged_exact);
}

TEST(Metrics, DisjointGraphsScoreZero) {
  const MockEncoder enc(64);
  const auto other = Graph({{"ocean", "AtLocation", "earth"}, {"whale", "PartOf", "pod"}});
  const auto s = ScorePair(Sample(), other, MockContext(enc));
  EXPECT_EQ(s.concepts.f1, 0.0);
  EXPECT_EQ(s.triplets.precision, 0.0);
  EXPECT_EQ(s.triplets.recall, 0.0);
  EXPECT_EQ(s.triplets.f1, 0.0);
  EXPECT_EQ(s.ged, 1.0);
}

TEST(Metrics, ConceptArithmetic) {
  const auto pred = Graph({}, {"a", "b", "c", "x"});
  const auto gold = Graph({}, {"a", "b", "c", "d", "e", "f"});
  const auto c = ConceptPrf(pred, gold);
  EXPECT_DOUBLE_EQ(c.precision, 0.75);
  EXPECT_DOUBLE_EQ(c.recall, 0.5);
  EXPECT_DOUBLE_EQ(c.f1, 0.6);
  const auto empty = ConceptPrf(Graph({}), gold);
  EXPECT_EQ(empty.precision, 0.0);
  EXPECT_EQ(empty.f1, 0.0);
}

TEST(Metrics, TripletsAreDirectionSensitive) {
  const auto a = Graph({{"x", "Causes", "y"}});
  const auto b = Graph({{"y", "Causes", "x"}});
  EXPECT_EQ(TripletPrf(a, b).f1, 0.0);
  EXPECT_EQ(ConceptPrf(a, b).f1, 1.0);
  EXPECT_EQ(TripletPrf(a, Graph({{"x", "causes", "y"}})).f1, 1.0);
}

TEST(Metrics, PrfSymmetryAndF1Bounds) {
  std::mt19937_64 rng(97);
  std::uniform_int_distribution<int> pick(0, 5);
  const char* rel[] = {"IsA", "Causes", "PartOf"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledTriplet> ta, tb;
    for (int i = 0; i < 4; ++i) {
      ta.push_back({"c" + std::to_string(pick(rng)), rel[pick(rng) % 3], "c" + std::to_string(pick(rng))});
      tb.push_back({"c" + std::to_string(pick(rng)), rel[pick(rng) % 3], "c" + std::to_string(pick(rng))});
    }
    const auto a = Graph(ta), b = Graph(tb);
    for (auto fn : {&ConceptPrf, &TripletPrf}) {
      const auto ab = fn(a, b), ba = fn(b, a);
      EXPECT_EQ(ab.precision, ba.recall);
      EXPECT_EQ(ab.recall, ba.precision);
      EXPECT_LE(ab.f1, std::max(ab.precision, ab.recall) + 1e-15);
      EXPECT_GE(ab.f1, std::min(ab.precision, ab.recall) - 1e-15);
      EXPECT_EQ(ab.f1 == 0.0, ab.precision == 0.0);
    }
  }
}

TEST(GraphBertScore, SingleRowArithmetic) {
  const auto pred = Graph({{"a", "IsA", "b"}});
  const auto gold = Graph({{"c", "IsA", "d"}, {"e", "IsA", "f"}});
  const SimilarityMatrixFn sim = [](std::span<const std::string> p, std::span<const std::string> g) {
    EXPECT_EQ(p.size(), 1u);
    EXPECT_EQ(g.size(), 2u);
    return std::vector<std::vector<double>>{{0.8, 0.3}};
  };
  const auto r = GraphBertScore(pred, gold, MakeVerbalizer(nullptr), sim);
  EXPECT_DOUBLE_EQ(r.precision, 0.8);
  EXPECT_DOUBLE_EQ(r.recall, 0.4);
  EXPECT_DOUBLE_EQ(r.f1, 8.0 / 15.0);
  EXPECT_EQ(GraphBertScore(Graph({}), gold, MakeVerbalizer(nullptr), sim).f1, 0.0);
}

TEST(GraphBertScore, FallbackVerbalization) {
  const auto v = MakeVerbalizer(nullptr);
  EXPECT_EQ(v("cannabis", "HasSubevent", "high"), "cannabis has subevent high");
}

TEST(Assignment, OptimalAgainstPermutationsAndGreedy) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t r = 1 + trial % 6, c = 1 + (trial / 6) % 6;
    const auto m = RandomMatrix(rng, r, c);
    const auto a = MaxAssignment(m);
    EXPECT_NEAR(a.total, PermutationOracle(m), 1e-12);
    EXPECT_GE(a.total, GreedyAssignment(m).total - 1e-12);
    double check = 0.0;
    std::vector<char> used(c, 0);
    size_t assigned = 0;
    for (size_t i = 0; i < r; ++i) {
      const auto j = a.row_to_col[i];
      if (j < 0) continue;
      ASSERT_FALSE(used[j]);
      used[j] = 1;
      check += m[i][j];
      ++assigned;
    }
    EXPECT_EQ(assigned, std::min(r, c));
    EXPECT_NEAR(check, a.total, 1e-12);
  }
  EXPECT_THROW(MaxAssignment({{1.0, 2.0}, {1.0}}), Error);
}

TEST(Ged, MatchesExhaustiveMappingOracle) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = RandomGed(rng, 5), b = RandomGed(rng, 5);
    const auto r = GraphEditDistance(a, b);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.distance, ExhaustiveGed(a, b)) << trial;
    EXPECT_EQ(GraphEditDistance(b, a).distance, r.distance);
    EXPECT_EQ(GraphEditDistance(a, a).distance, 0.0);
  }
}

TEST(Ged, TriangleInequality) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = RandomGed(rng, 5), b = RandomGed(rng, 5), c = RandomGed(rng, 5);
    const double ab = GraphEditDistance(a, b).distance;
    const double bc = GraphEditDistance(b, c).distance;
    const double ac = GraphEditDistance(a, c).distance;
    EXPECT_LE(ac, ab + bc);
  }
}

TEST(Ged, EmptyAgainstFullIsOne) {
  const auto g = ToGedGraph(Sample());
  const GedGraph empty;
  const auto r = GraphEditDistance(empty, g);
  EXPECT_EQ(r.distance, static_cast<double>(g.labels.size() + g.edges.size()));
  EXPECT_EQ(NormalizeGed(r.distance, empty, g), 1.0);
}

TEST(Corpus, TwoInstancesAverageByHand) {
  testing::TempDir dir;
  const auto pred = dir.path() / "pred", gold = dir.path() / "gold";
  std::filesystem::create_directories(pred);
  std::filesystem::create_directories(gold);
  // a: identical. b: pred has 2 of gold's 4 concepts plus 2 extra, no shared triplet.
  testing::WriteText(pred / "a.tsv", "x\tIsA\ty\n");
  testing::WriteText(gold / "a.tsv", "x\tIsA\ty\n");
  testing::WriteText(pred / "b.tsv", "p\tCauses\tq\nq\tCauses\tr\nr\tCauses\ts\n");
  testing::WriteText(gold / "b.tsv", "p\tIsA\tu\nv\tIsA\tq\n");
  testing::WriteText(pred / "manifest.json", "{}");
  const MockEncoder enc(32);
  const auto rep = EvaluateCorpus(pred, gold, MockContext(enc));
  ASSERT_EQ(rep.ids, (std::vector<std::string>{"a", "b"}));
  // b: concepts P = 2/4, R = 2/4.
  EXPECT_DOUBLE_EQ(rep.scores[1].concepts.precision, 0.5);
  EXPECT_DOUBLE_EQ(rep.macro.concepts.precision, 0.75);
  EXPECT_DOUBLE_EQ(rep.macro.concepts.recall, 0.75);
  EXPECT_DOUBLE_EQ(rep.macro.triplets.f1, 0.5);
  EXPECT_DOUBLE_EQ(rep.mean_nodes, 3.0);
  EXPECT_DOUBLE_EQ(rep.mean_edges, 2.0);
  const auto table = FormatReportTable(rep);
  EXPECT_NE(table.find("instances: 2"), std::string::npos);
  const auto csv = FormatReportCsv(rep);
  EXPECT_EQ(csv.rfind("id,nodes,edges,c_p,c_r,c_f1,t_p,t_r,t_f1,ged,ged_exact,gbs\n", 0), 0u);

  testing::WriteText(gold / "c.tsv", "x\tIsA\ty\n");
  try {
    EvaluateCorpus(pred, gold, MockContext(enc));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(" c"), std::string::npos);
  }
}

}  // namespace
}  // namespace cckg
