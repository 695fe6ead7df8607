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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/cckg_graph.hpp"
#include "core/embed_store.hpp"
#include "core/kg_store.hpp"
#include "core/shortest_paths.hpp"

namespace cckg {

enum class Side { kPremise, kConclusion };

struct Constituent {
  std::string text;
  bool is_leaf = false;
  Side side = Side::kPremise;
};

// One argument to extract a graph for.
struct Query {
  std::string id;
  std::string premise;
  std::string conclusion;
  std::vector<Constituent> constituents;

  // Premise and conclusion joined by a single space.
  std::string ArgumentText() const { return premise + " " + conclusion; }
};

// Parses one JSONL object {id, premise, conclusion, constituents?}.
// A constituent without a "side" is assigned to whichever text contains it.
Query ParseQuery(std::string_view json_line);

struct ConstituentScores {
  std::string text;
  Side side = Side::kPremise;
  std::vector<double> scores;
};

struct Anchors {
  std::vector<ConceptId> premise;     // sorted, unique
  std::vector<ConceptId> conclusion;  // sorted, unique
  std::vector<TripletId> premise_triplets;
  std::vector<TripletId> conclusion_triplets;
  std::vector<std::pair<std::string, std::vector<TripletId>>> constituent_triplets;
  bool clamped = false;  // m exceeded the triplet count

  std::vector<ConceptId> All() const;
  Role RoleOf(ConceptId id) const;
};

// Indices of the m highest scores; ties go to the lower index.
std::vector<TripletId> TopTriplets(std::span<const double> scores, size_t m);

// Endpoints of the top-m triplets by premise and by conclusion similarity.
// With constituents, each non-leaf constituent selects its own top-m and
// a side without usable constituents falls back to its whole-text scores.
Anchors SelectAnchors(const KnowledgeGraph& kg, const TripletScores& scores, size_t m,
                      std::span<const ConstituentScores> constituents = {});

enum class PairMode { kAll, kCross };
enum class SearchMode { kWeighted, kUnweightedOne, kUnweightedAll };

std::string_view ToString(PairMode mode);
std::string_view ToString(SearchMode mode);
PairMode ParsePairMode(std::string_view name);
SearchMode ParseSearchMode(std::string_view name);

// Unordered anchor pairs (smaller id first), sorted.
std::vector<std::pair<ConceptId, ConceptId>> AnchorPairs(const Anchors& anchors,
                                                         PairMode mode);

struct AnchorPath {
  ConceptId source = 0;
  ConceptId target = 0;
  Path path;
};

struct PathSearchResult {
  std::vector<AnchorPath> paths;
  size_t skipped_pairs = 0;
};

// One canonical minimum-weight path per pair. Each distinct first element
// of a pair is searched once and serves all its partners.
PathSearchResult DijkstraPaths(const Adjacency& graph, std::span<const double> weights,
                               std::span<const std::pair<ConceptId, ConceptId>> pairs);

struct ExtractOptions {
  size_t m = 1;
  size_t k = 1;
  PairMode pairs = PairMode::kAll;
  SearchMode mode = SearchMode::kWeighted;
  uint64_t seed = 0;
};

// Upper bound on stored paths per pair in unweighted-all mode; edges past
// the bound are still covered by one path each.
inline constexpr size_t kMaxEnumeratedPaths = 1000;

std::vector<double> EdgeWeights(std::span<const double> s_a);

// Connects the anchors and unions the retained paths into a graph.
Cckg BuildCckg(const KnowledgeGraph& kg, std::span<const double> s_a, const Anchors& anchors,
               const ExtractOptions& options);

// As BuildCckg, with explicit path costs for the weighted mode.
Cckg BuildCckgWithCosts(const KnowledgeGraph& kg, std::span<const double> s_a,
                        std::span<const double> costs, const Anchors& anchors,
                        const ExtractOptions& options);

// Full per-argument pipeline: encode, score, select anchors, connect.
Cckg Extract(const KnowledgeGraph& kg, const EmbeddingMatrix& triplet_embeddings,
             const TextEncoder& encoder, const Query& query, const ExtractOptions& options);

}  // namespace cckg
