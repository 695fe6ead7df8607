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

#include "core/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <utility>

#include "core/error.hpp"

namespace cckg {
namespace {

constexpr double kGainTieTolerance = 1e-12;

}  // namespace

SimpleGraph SimpleGraph::Collapse(size_t num_nodes, std::span<const WeightedEdge> edges) {
  std::map<std::pair<uint32_t, uint32_t>, double> merged;
  for (const auto& e : edges) {
    if (e.a == e.b) continue;
    merged[{std::min(e.a, e.b), std::max(e.a, e.b)}] += e.weight;
  }
  SimpleGraph g;
  g.num_nodes = num_nodes;
  for (const auto& [key, w] : merged) g.edges.push_back({key.first, key.second, w});
  return g;
}

double Modularity(const SimpleGraph& graph, std::span<const uint32_t> community) {
  double total = 0.0;
  for (const auto& e : graph.edges) total += e.weight;
  if (total <= 0.0) return 0.0;
  std::map<uint32_t, double> internal, degree;
  for (const auto& e : graph.edges) {
    degree[community[e.a]] += e.weight;
    degree[community[e.b]] += e.weight;
    if (community[e.a] == community[e.b]) internal[community[e.a]] += e.weight;
  }
  double q = 0.0;
  for (const auto& [c, d] : degree) {
    const double frac = d / (2.0 * total);
    q += internal[c] / total - frac * frac;
  }
  return q;
}

Clustering GreedyModularity(const SimpleGraph& graph) {
  const size_t n = graph.num_nodes;
  Clustering result;
  result.community.resize(n);
  for (uint32_t i = 0; i < n; ++i) result.community[i] = i;
  double total = 0.0;
  for (const auto& e : graph.edges) total += e.weight;
  if (n < 2 || total <= 0.0) {
    result.count = n;
    result.modularity = 0.0;
    return result;
  }

  // between[{i, j}] (i < j): weight joining communities i and j.
  std::map<std::pair<uint32_t, uint32_t>, double> between;
  std::vector<double> degree(n, 0.0);
  for (const auto& e : graph.edges) {
    between[{e.a, e.b}] += e.weight;
    degree[e.a] += e.weight;
    degree[e.b] += e.weight;
  }
  std::vector<char> active(n, 1);

  while (true) {
    double best_gain = 0.0;
    std::pair<uint32_t, uint32_t> best{0, 0};
    bool found = false;
    for (const auto& [key, w] : between) {
      const double gain = w / total - degree[key.first] * degree[key.second] / (2.0 * total * total);
      if (gain <= kGainTieTolerance) continue;
      if (!found || gain > best_gain + kGainTieTolerance) {
        best_gain = gain;
        best = key;
        found = true;
      }
    }
    if (!found) break;
    const auto [keep, drop] = best;
    // Fold `drop` into `keep`.
    std::map<std::pair<uint32_t, uint32_t>, double> next;
    for (const auto& [key, w] : between) {
      uint32_t a = key.first == drop ? keep : key.first;
      uint32_t b = key.second == drop ? keep : key.second;
      if (a == b) continue;
      next[{std::min(a, b), std::max(a, b)}] += w;
    }
    between.swap(next);
    degree[keep] += degree[drop];
    degree[drop] = 0.0;
    active[drop] = 0;
    for (auto& c : result.community) {
      if (c == drop) c = keep;
    }
  }

  std::map<uint32_t, uint32_t> compact;
  for (auto& c : result.community) {
    auto it = compact.try_emplace(c, static_cast<uint32_t>(compact.size())).first;
    c = it->second;
  }
  result.count = compact.size();
  result.modularity = Modularity(graph, result.community);
  return result;
}

double Density(const SimpleGraph& graph) {
  const double n = static_cast<double>(graph.num_nodes);
  if (graph.num_nodes < 2) return 0.0;
  return 2.0 * static_cast<double>(graph.edges.size()) / (n * (n - 1.0));
}

double Transitivity(const SimpleGraph& graph) {
  std::vector<std::vector<uint32_t>> adj(graph.num_nodes);
  for (const auto& e : graph.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  double triangles = 0.0, triples = 0.0;
  for (uint32_t v = 0; v < graph.num_nodes; ++v) {
    const double d = static_cast<double>(adj[v].size());
    triples += d * (d - 1.0) / 2.0;
    for (size_t i = 0; i < adj[v].size(); ++i) {
      for (size_t j = i + 1; j < adj[v].size(); ++j) {
        const uint32_t a = adj[v][i], b = adj[v][j];
        if (std::binary_search(adj[a].begin(), adj[a].end(), b)) triangles += 1.0;
      }
    }
  }
  // Each triangle is seen once from each of its three corners.
  return triples == 0.0 ? 0.0 : triangles / triples;
}

double MinCut(size_t num_nodes, std::span<const WeightedEdge> edges,
              std::span<const uint32_t> sources, std::span<const uint32_t> sinks) {
  if (sources.empty() || sinks.empty()) return 0.0;
  const size_t s = num_nodes, t = num_nodes + 1, n = num_nodes + 2;
  double total = 0.0;
  for (const auto& e : edges) {
    if (e.weight < 0.0) Fail(ErrorCode::kInvalidArgument, "negative capacity");
    total += e.weight;
  }
  const double infinite = 2.0 * total + 1.0;
  std::vector<std::vector<double>> cap(n, std::vector<double>(n, 0.0));
  for (const auto& e : edges) {
    if (e.a == e.b) continue;
    cap[e.a][e.b] += e.weight;
    cap[e.b][e.a] += e.weight;
  }
  for (uint32_t v : sources) cap[s][v] = infinite;
  for (uint32_t v : sinks) cap[v][t] = infinite;

  double flow = 0.0;
  constexpr double kEps = 1e-12;
  while (true) {
    std::vector<int64_t> parent(n, -1);
    parent[s] = static_cast<int64_t>(s);
    std::queue<size_t> queue;
    queue.push(s);
    while (!queue.empty() && parent[t] < 0) {
      const size_t u = queue.front();
      queue.pop();
      for (size_t v = 0; v < n; ++v) {
        if (parent[v] < 0 && cap[u][v] > kEps) {
          parent[v] = static_cast<int64_t>(u);
          queue.push(v);
        }
      }
    }
    if (parent[t] < 0) break;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (size_t v = t; v != s; v = static_cast<size_t>(parent[v])) {
      bottleneck = std::min(bottleneck, cap[static_cast<size_t>(parent[v])][v]);
    }
    for (size_t v = t; v != s; v = static_cast<size_t>(parent[v])) {
      const size_t u = static_cast<size_t>(parent[v]);
      cap[u][v] -= bottleneck;
      cap[v][u] += bottleneck;
    }
    flow += bottleneck;
  }
  return flow;
}

}  // namespace cckg
