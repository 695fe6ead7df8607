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
#include <string_view>
#include <utility>
#include <vector>

#include "core/cckg_graph.hpp"
#include "core/embed_store.hpp"

namespace cckg {

enum class Ranker { kSimilarity, kPagerank };

std::string_view ToString(Ranker ranker);
Ranker ParseRanker(std::string_view name);

// Node indices with their relevance score, ascending (least relevant
// first). Covers every node of the graph, anchors included.
struct PruneRanking {
  Ranker scorer = Ranker::kSimilarity;
  std::vector<std::pair<uint32_t, double>> order;
};

inline constexpr double kDefaultDamping = 0.85;
inline constexpr size_t kPageRankMaxIterations = 200;
inline constexpr double kPageRankTolerance = 1e-10;

PruneRanking RankBySimilarity(const Cckg& graph, std::span<const float> argument_embedding,
                              const TextEncoder& encoder);

// PageRank over the simple undirected collapse of the nodes flagged in
// `alive` (all nodes when empty). Dead nodes get 0. Isolated nodes spread
// their mass uniformly.
std::vector<double> PageRank(const Cckg& graph, std::span<const char> alive = {},
                             double damping = kDefaultDamping);

PruneRanking RankByPageRank(const Cckg& graph, double damping = kDefaultDamping);

// Connected components among the alive nodes.
size_t ComponentCount(const Cckg& graph, std::span<const char> alive);

// Full greedy pass in ranking order, repeated until nothing more can be
// deleted. A node is deletable unless it is an anchor or deleting it would
// increase the component count.
std::vector<uint32_t> SimilarityDeletionSequence(const Cckg& graph, const PruneRanking& ranking);

// Greedy deletion with PageRank recomputed after every deletion.
std::vector<uint32_t> PageRankDeletionSequence(const Cckg& graph,
                                               double damping = kDefaultDamping);

// Number of leading deletions applied for a fraction of the sequence.
size_t DeletionCount(double fraction, size_t sequence_length);

// Drops `nodes` with their incident edges. Paths that lose an edge are
// dropped; deleted labels are appended to `pruned_concepts`.
Cckg RemoveNodes(const Cckg& graph, std::span<const uint32_t> nodes);

Cckg Prune(const Cckg& graph, const PruneRanking& ranking, double fraction);
Cckg PruneByPageRank(const Cckg& graph, double fraction, double damping = kDefaultDamping);

}  // namespace cckg
