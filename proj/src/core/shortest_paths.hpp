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
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "core/kg_store.hpp"

namespace cckg {

struct Path {
  std::vector<uint32_t> nodes;  // nodes.size() == edges.size() + 1
  std::vector<uint32_t> edges;
  double cost = 0.0;

  size_t hops() const { return edges.size(); }
};

// Sum of edge weights in path order, starting at the source.
double PathCost(std::span<const double> weights, std::span<const uint32_t> edges);

// Total order used for every tie-break: cost, then hop count, then the
// lexicographic order of the edge-id sequence.
bool PathLess(const Path& a, const Path& b);

struct SearchMask {
  std::unordered_set<uint32_t> banned_nodes;
  std::unordered_set<uint32_t> banned_edges;
};

// Single-source Dijkstra over an undirected multigraph with non-negative
// edge weights. Labels are (distance, hops) pairs compared
// lexicographically, which makes the shortest-path DAG acyclic even with
// zero-weight edges. Self-loops are never relaxed.
//
// The instance keeps per-node state sized to the graph and resets only the
// nodes it touched, so one search object can be reused for many sources.
class ShortestPathSearch {
 public:
  ShortestPathSearch(const Adjacency& graph, std::span<const double> weights);

  // Stops once every node in `targets` is settled (or the reachable part
  // of the graph is exhausted). An empty target list runs to completion.
  // `mask` must outlive the queries that follow this call.
  void Run(uint32_t source, std::span<const uint32_t> targets = {},
           const SearchMask* mask = nullptr);

  uint32_t source() const { return source_; }
  bool Reached(uint32_t node) const { return state_[node] == kSettled; }
  double Distance(uint32_t node) const { return dist_[node]; }
  uint32_t Hops(uint32_t node) const { return hops_[node]; }

  // Minimum (cost, hops) path; among equals, the lexicographically
  // smallest edge-id sequence.
  std::optional<Path> CanonicalPath(uint32_t target) const;

  // Every edge lying on some minimum-label path to `target`, ascending.
  std::vector<uint32_t> ShortestPathEdges(uint32_t target) const;

  // Minimum-label paths to `target` in lexicographic order, at most
  // `limit` of them.
  std::vector<Path> EnumeratePaths(uint32_t target, size_t limit,
                                   bool* truncated = nullptr) const;

  // A minimum-label path to `target` that uses `edge`, if one exists.
  std::optional<Path> PathThroughEdge(uint32_t target, uint32_t edge) const;

  // One minimum-label path drawn uniformly at random.
  std::optional<Path> SamplePath(uint32_t target, uint64_t seed) const;

  // Number of minimum-label paths to `target` (as a double; may be huge).
  double CountPaths(uint32_t target) const;

 private:
  static constexpr uint8_t kUnseen = 0;
  static constexpr uint8_t kQueued = 1;
  static constexpr uint8_t kSettled = 2;

  bool IsDagEdge(uint32_t from, uint32_t edge, uint32_t to) const;
  bool EdgeBanned(uint32_t edge) const;
  // Marks nodes that reach `target` along DAG edges; returns them in
  // ascending label order (a topological order of the DAG).
  std::vector<uint32_t> MarkRegion(uint32_t target) const;
  bool Marked(uint32_t node) const { return stamp_[node] == generation_; }
  // Greedy smallest-edge walk inside the marked region.
  Path WalkToTarget(uint32_t from, uint32_t target) const;

  const Adjacency& graph_;
  std::span<const double> weights_;
  const SearchMask* mask_ = nullptr;
  uint32_t source_ = 0;
  std::vector<double> dist_;
  std::vector<uint32_t> hops_;
  std::vector<uint8_t> state_;
  std::vector<uint32_t> touched_;
  mutable std::vector<uint32_t> stamp_;
  mutable uint32_t generation_ = 0;
};

// Up to k loopless source-target paths in non-decreasing PathLess order
// (Yen's algorithm). k = 1 returns the canonical shortest path.
std::vector<Path> YenPaths(const Adjacency& graph, std::span<const double> weights,
                           uint32_t source, uint32_t target, size_t k);

}  // namespace cckg
