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

#include "core/pruner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cckg {
namespace {

std::vector<std::vector<uint32_t>> SimpleNeighbors(const Cckg& graph,
                                                   std::span<const char> alive) {
  std::vector<std::set<uint32_t>> sets(graph.nodes.size());
  for (const auto& e : graph.edges) {
    if (e.head == e.tail || !alive[e.head] || !alive[e.tail]) continue;
    sets[e.head].insert(e.tail);
    sets[e.tail].insert(e.head);
  }
  std::vector<std::vector<uint32_t>> out(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) out[i].assign(sets[i].begin(), sets[i].end());
  return out;
}

std::vector<char> AllAlive(const Cckg& graph) { return std::vector<char>(graph.nodes.size(), 1); }

bool Deletable(const Cckg& graph, std::vector<char>& alive, uint32_t node, size_t components) {
  if (!alive[node] || IsAnchorRole(graph.nodes[node].role)) return false;
  alive[node] = 0;
  const bool ok = ComponentCount(graph, alive) <= components;
  alive[node] = 1;
  return ok;
}

int64_t Quantize(double score) { return std::llround(score * 1e12); }

}  // namespace

std::string_view ToString(Ranker ranker) {
  return ranker == Ranker::kSimilarity ? "similarity" : "pagerank";
}

Ranker ParseRanker(std::string_view name) {
  if (name == "similarity") return Ranker::kSimilarity;
  if (name == "pagerank") return Ranker::kPagerank;
  Fail(ErrorCode::kInvalidArgument, "unknown ranker '" + std::string(name) + "'");
}

PruneRanking RankBySimilarity(const Cckg& graph, std::span<const float> argument_embedding,
                              const TextEncoder& encoder) {
  PruneRanking ranking;
  ranking.scorer = Ranker::kSimilarity;
  for (uint32_t i = 0; i < graph.nodes.size(); ++i) {
    const auto v = encoder.Encode(LabelToText(graph.nodes[i].label));
    ranking.order.emplace_back(i, Dot(v, argument_embedding));
  }
  std::sort(ranking.order.begin(), ranking.order.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return graph.OrderKey(a.first) < graph.OrderKey(b.first);
  });
  return ranking;
}

std::vector<double> PageRank(const Cckg& graph, std::span<const char> alive_in, double damping) {
  if (!(damping > 0.0 && damping < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "damping must lie in (0, 1)");
  }
  std::vector<char> alive = alive_in.empty() ? AllAlive(graph)
                                             : std::vector<char>(alive_in.begin(), alive_in.end());
  const auto nbrs = SimpleNeighbors(graph, alive);
  size_t n = 0;
  for (char a : alive) n += a ? 1 : 0;
  std::vector<double> rank(graph.nodes.size(), 0.0);
  if (n == 0) return rank;
  for (size_t i = 0; i < rank.size(); ++i) rank[i] = alive[i] ? 1.0 / n : 0.0;
  std::vector<double> next(rank.size());
  for (size_t iter = 0; iter < kPageRankMaxIterations; ++iter) {
    double dangling = 0.0;
    for (size_t u = 0; u < rank.size(); ++u) {
      if (alive[u] && nbrs[u].empty()) dangling += rank[u];
    }
    double residual = 0.0;
    for (size_t v = 0; v < rank.size(); ++v) {
      if (!alive[v]) {
        next[v] = 0.0;
        continue;
      }
      double inflow = 0.0;
      for (uint32_t u : nbrs[v]) inflow += rank[u] / static_cast<double>(nbrs[u].size());
      next[v] = (1.0 - damping) / n + damping * (inflow + dangling / n);
      residual += std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    if (residual < kPageRankTolerance) break;
  }
  return rank;
}

PruneRanking RankByPageRank(const Cckg& graph, double damping) {
  const auto rank = PageRank(graph, {}, damping);
  PruneRanking ranking;
  ranking.scorer = Ranker::kPagerank;
  for (uint32_t i = 0; i < graph.nodes.size(); ++i) ranking.order.emplace_back(i, rank[i]);
  std::sort(ranking.order.begin(), ranking.order.end(), [&](const auto& a, const auto& b) {
    const auto qa = Quantize(a.second), qb = Quantize(b.second);
    if (qa != qb) return qa < qb;
    return graph.OrderKey(a.first) < graph.OrderKey(b.first);
  });
  return ranking;
}

size_t ComponentCount(const Cckg& graph, std::span<const char> alive) {
  std::vector<std::vector<uint32_t>> adj(graph.nodes.size());
  for (const auto& e : graph.edges) {
    if (!alive[e.head] || !alive[e.tail]) continue;
    adj[e.head].push_back(e.tail);
    adj[e.tail].push_back(e.head);
  }
  std::vector<char> seen(graph.nodes.size(), 0);
  size_t components = 0;
  std::vector<uint32_t> stack;
  for (uint32_t s = 0; s < graph.nodes.size(); ++s) {
    if (!alive[s] || seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const uint32_t u = stack.back();
      stack.pop_back();
      for (uint32_t v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return components;
}

std::vector<uint32_t> SimilarityDeletionSequence(const Cckg& graph, const PruneRanking& ranking) {
  std::vector<char> covered(graph.nodes.size(), 0);
  for (const auto& [node, score] : ranking.order) {
    if (node >= graph.nodes.size() || covered[node]) {
      Fail(ErrorCode::kInvalidArgument, "ranking does not match the graph's concepts");
    }
    covered[node] = 1;
  }
  if (ranking.order.size() != graph.nodes.size()) {
    Fail(ErrorCode::kInvalidArgument, "ranking does not cover every concept of the graph");
  }
  std::vector<char> alive = AllAlive(graph);
  size_t components = ComponentCount(graph, alive);
  std::vector<uint32_t> sequence;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [node, score] : ranking.order) {
      if (!Deletable(graph, alive, node, components)) continue;
      alive[node] = 0;
      components = ComponentCount(graph, alive);
      sequence.push_back(node);
      changed = true;
    }
  }
  return sequence;
}

std::vector<uint32_t> PageRankDeletionSequence(const Cckg& graph, double damping) {
  std::vector<char> alive = AllAlive(graph);
  size_t components = ComponentCount(graph, alive);
  std::vector<uint32_t> sequence;
  while (true) {
    const auto rank = PageRank(graph, alive, damping);
    std::vector<uint32_t> candidates;
    for (uint32_t i = 0; i < graph.nodes.size(); ++i) {
      if (alive[i] && !IsAnchorRole(graph.nodes[i].role)) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(), [&](uint32_t a, uint32_t b) {
      const auto qa = Quantize(rank[a]), qb = Quantize(rank[b]);
      if (qa != qb) return qa < qb;
      return graph.OrderKey(a) < graph.OrderKey(b);
    });
    bool deleted = false;
    for (uint32_t node : candidates) {
      if (!Deletable(graph, alive, node, components)) continue;
      alive[node] = 0;
      components = ComponentCount(graph, alive);
      sequence.push_back(node);
      deleted = true;
      break;
    }
    if (!deleted) break;
  }
  return sequence;
}

size_t DeletionCount(double fraction, size_t sequence_length) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "prune fraction must lie in [0, 1]");
  }
  // Tolerance keeps e.g. 0.75 * 4 from rounding up to 4 on float noise.
  const double exact = fraction * static_cast<double>(sequence_length);
  const auto count = static_cast<size_t>(std::ceil(exact - 1e-9));
  return std::min(count, sequence_length);
}

Cckg RemoveNodes(const Cckg& graph, std::span<const uint32_t> nodes) {
  std::vector<char> removed(graph.nodes.size(), 0);
  for (uint32_t n : nodes) {
    if (n >= graph.nodes.size()) Fail(ErrorCode::kInvalidArgument, "node index out of range");
    removed[n] = 1;
  }
  Cckg out;
  out.id = graph.id;
  out.premise = graph.premise;
  out.conclusion = graph.conclusion;
  out.skipped_pairs = graph.skipped_pairs;
  out.pruned_concepts = graph.pruned_concepts.value_or(std::vector<std::string>{});
  for (uint32_t n : nodes) out.pruned_concepts->push_back(graph.nodes[n].label);

  std::vector<int64_t> node_map(graph.nodes.size(), -1);
  for (uint32_t i = 0; i < graph.nodes.size(); ++i) {
    if (removed[i]) continue;
    node_map[i] = static_cast<int64_t>(out.nodes.size());
    out.nodes.push_back(graph.nodes[i]);
  }
  std::vector<int64_t> edge_map(graph.edges.size(), -1);
  for (uint32_t i = 0; i < graph.edges.size(); ++i) {
    const auto& e = graph.edges[i];
    if (removed[e.head] || removed[e.tail]) continue;
    edge_map[i] = static_cast<int64_t>(out.edges.size());
    CckgEdge copy = e;
    copy.head = static_cast<uint32_t>(node_map[e.head]);
    copy.tail = static_cast<uint32_t>(node_map[e.tail]);
    out.edges.push_back(std::move(copy));
  }
  for (const auto& p : graph.paths) {
    bool intact = node_map[p.source] >= 0 && node_map[p.target] >= 0;
    for (uint32_t e : p.edges) intact = intact && edge_map[e] >= 0;
    if (!intact) continue;
    CckgPath copy = p;
    copy.source = static_cast<uint32_t>(node_map[p.source]);
    copy.target = static_cast<uint32_t>(node_map[p.target]);
    for (auto& e : copy.edges) e = static_cast<uint32_t>(edge_map[e]);
    out.paths.push_back(std::move(copy));
  }
  return out;
}

Cckg Prune(const Cckg& graph, const PruneRanking& ranking, double fraction) {
  const auto sequence = SimilarityDeletionSequence(graph, ranking);
  const size_t count = DeletionCount(fraction, sequence.size());
  return RemoveNodes(graph, std::span(sequence).first(count));
}

Cckg PruneByPageRank(const Cckg& graph, double fraction, double damping) {
  const auto sequence = PageRankDeletionSequence(graph, damping);
  const size_t count = DeletionCount(fraction, sequence.size());
  return RemoveNodes(graph, std::span(sequence).first(count));
}

}  // namespace cckg
