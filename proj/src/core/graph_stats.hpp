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
#include <vector>

namespace cckg {

struct WeightedEdge {
  uint32_t a = 0;
  uint32_t b = 0;
  double weight = 1.0;
};

// Simple undirected graph: no self-loops, at most one edge per node pair
// (a < b), edges sorted.
struct SimpleGraph {
  size_t num_nodes = 0;
  std::vector<WeightedEdge> edges;

  // Merges parallel edges by summing weights and drops self-loops.
  static SimpleGraph Collapse(size_t num_nodes, std::span<const WeightedEdge> edges);
};

struct Clustering {
  std::vector<uint32_t> community;  // per node, compact ids
  size_t count = 0;
  double modularity = 0.0;
};

double Modularity(const SimpleGraph& graph, std::span<const uint32_t> community);

// Agglomerative greedy modularity maximization: start from singletons and
// repeatedly merge the connected pair of communities with the largest
// positive modularity gain; ties go to the smallest community ids.
Clustering GreedyModularity(const SimpleGraph& graph);

double Density(const SimpleGraph& graph);
// Global clustering coefficient: 3 * triangles / connected triples.
double Transitivity(const SimpleGraph& graph);

// Minimum s-t cut with every node of `sources` joined to a super-source and
// every node of `sinks` to a super-sink. `edges` are undirected, parallel
// edges allowed. Max-flow by shortest augmenting paths.
double MinCut(size_t num_nodes, std::span<const WeightedEdge> edges,
              std::span<const uint32_t> sources, std::span<const uint32_t> sinks);

}  // namespace cckg
