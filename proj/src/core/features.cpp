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

#include "core/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <utility>

#include "core/embed_store.hpp"
#include "core/error.hpp"
#include "core/graph_stats.hpp"
#include "core/io.hpp"

namespace cckg {
namespace {

std::vector<WeightedEdge> CapacityEdges(const Cckg& graph, bool weighted) {
  std::vector<WeightedEdge> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    edges.push_back({e.head, e.tail, weighted ? EdgeAffinity(e.s_a) : 1.0});
  }
  return edges;
}

// Node index -> rank of its label. Greedy clustering breaks ties by node
// index, so clustering on label ranks keeps the result independent of
// concept ids and node order.
std::vector<WeightedEdge> ByLabelRank(const Cckg& graph, std::vector<WeightedEdge> edges) {
  std::vector<uint32_t> order(graph.nodes.size());
  for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return graph.nodes[a].label < graph.nodes[b].label;
  });
  std::vector<uint32_t> rank(order.size());
  for (uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (auto& e : edges) {
    e.a = rank[e.a];
    e.b = rank[e.b];
  }
  return edges;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    Fail(ErrorCode::kFormat, "bad number in feature matrix: " + std::string(s));
  }
  return v;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::array<double, 5> SizeFeatures(const Cckg& graph) {
  double p = 0, c = 0, shared = 0;
  for (const auto& node : graph.nodes) {
    if (IsPremiseRole(node.role)) p += 1;
    if (IsConclusionRole(node.role)) c += 1;
    if (node.role == Role::kBoth) shared += 1;
  }
  return {static_cast<double>(graph.nodes.size()), static_cast<double>(graph.edges.size()), p, c,
          shared};
}

std::array<double, 6> ConnectivityFeatures(const Cckg& graph) {
  const size_t n = graph.nodes.size();
  if (n < 2) return {static_cast<double>(n), static_cast<double>(n), 0.0, 0.0, 0.0, 0.0};
  const auto weighted = SimpleGraph::Collapse(n, ByLabelRank(graph, CapacityEdges(graph, true)));
  const auto unweighted_edges = ByLabelRank(graph, CapacityEdges(graph, false));
  // Unit affinity per simple edge: parallel edges count once.
  SimpleGraph unweighted = SimpleGraph::Collapse(n, unweighted_edges);
  for (auto& e : unweighted.edges) e.weight = 1.0;
  const auto cw = GreedyModularity(weighted);
  const auto cu = GreedyModularity(unweighted);
  return {static_cast<double>(cw.count), static_cast<double>(cu.count), cw.modularity,
          cu.modularity, Density(unweighted), Transitivity(unweighted)};
}

std::array<double, 4> DistanceFeatures(const Cckg& graph) {
  const size_t n = graph.nodes.size();
  std::vector<uint32_t> sources, sinks;
  bool shared = false;
  for (uint32_t i = 0; i < n; ++i) {
    const Role r = graph.nodes[i].role;
    if (IsPremiseRole(r)) sources.push_back(i);
    if (IsConclusionRole(r)) sinks.push_back(i);
    if (r == Role::kBoth) shared = true;
  }

  std::array<double, 4> out{};
  for (int variant = 0; variant < 2; ++variant) {
    const bool weighted = variant == 0;
    const auto edges = CapacityEdges(graph, weighted);
    if (shared) {
      double total = 0.0;
      for (const auto& e : edges) total += e.weight;
      out[variant] = total + 1.0;
    } else {
      out[variant] = MinCut(n, edges, sources, sinks);
    }
  }

  // Undirected weighted distances from every premise node.
  std::vector<std::vector<std::pair<uint32_t, double>>> adj(n);
  double total_weight = 0.0;
  for (const auto& e : graph.edges) {
    adj[e.head].push_back({e.tail, e.weight});
    if (e.head != e.tail) adj[e.tail].push_back({e.head, e.weight});
    total_weight += e.weight;
  }
  std::vector<char> is_sink(n, 0);
  for (uint32_t v : sinks) is_sink[v] = 1;
  double sum = 0.0, max = 0.0;
  size_t reachable = 0;
  const double inf = std::numeric_limits<double>::infinity();
  for (uint32_t s : sources) {
    std::vector<double> dist(n, inf);
    using Item = std::pair<double, uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (d + w < dist[v]) {
          dist[v] = d + w;
          heap.push({dist[v], v});
        }
      }
    }
    for (uint32_t c = 0; c < n; ++c) {
      if (!is_sink[c] || c == s || dist[c] == inf) continue;
      sum += dist[c];
      max = std::max(max, dist[c]);
      ++reachable;
    }
  }
  if (reachable == 0) {
    out[2] = out[3] = total_weight + 1.0;
  } else {
    out[2] = sum / static_cast<double>(reachable);
    out[3] = max;
  }
  return out;
}

std::array<double, 4> TextFeatures(std::span<const float> premise_embedding,
                                   std::span<const float> conclusion_embedding,
                                   const NliScores& nli) {
  const double probs[3] = {nli.entail, nli.neutral, nli.contradict};
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      Fail(ErrorCode::kInvalidArgument, "NLI probability outside [0, 1]");
    }
  }
  if (std::abs(probs[0] + probs[1] + probs[2] - 1.0) > kNliSumTolerance) {
    Fail(ErrorCode::kInvalidArgument, "NLI probabilities do not sum to 1");
  }
  return {Dot(premise_embedding, conclusion_embedding), nli.entail, nli.neutral, nli.contradict};
}

FeatureVector ComputeFeatures(const Cckg& graph, std::span<const float> premise_embedding,
                              std::span<const float> conclusion_embedding,
                              const NliScores& nli) {
  FeatureVector v{};
  size_t i = 0;
  for (double x : SizeFeatures(graph)) v[i++] = x;
  for (double x : ConnectivityFeatures(graph)) v[i++] = x;
  for (double x : DistanceFeatures(graph)) v[i++] = x;
  for (double x : TextFeatures(premise_embedding, conclusion_embedding, nli)) v[i++] = x;
  return v;
}

std::string FormatMatrix(std::span<const FeatureRow> rows) {
  const bool labeled = std::any_of(rows.begin(), rows.end(),
                                   [](const FeatureRow& r) { return r.label.has_value(); });
  std::string out = "id";
  for (auto name : kFeatureNames) {
    out += ',';
    out += name;
  }
  if (labeled) out += ",label";
  out += '\n';
  for (const auto& row : rows) {
    if (row.id.find_first_of(",\n") != std::string::npos) {
      Fail(ErrorCode::kInvalidArgument, "argument id contains a comma or newline: " + row.id);
    }
    out += row.id;
    for (double v : row.values) {
      out += ',';
      out += FormatDouble(v);
    }
    if (labeled) {
      out += ',';
      out += row.label.value_or("");
    }
    out += '\n';
  }
  return out;
}

size_t ExportMatrix(std::span<const FeatureRow> rows, const std::filesystem::path& out_path) {
  WriteFileAtomically(out_path, FormatMatrix(rows));
  return rows.size();
}

std::vector<FeatureRow> ParseMatrix(std::string_view csv) {
  std::vector<FeatureRow> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kFormat, "feature matrix has no header");
  const auto header = SplitCommas(line);
  const bool labeled = header.size() == kFeatureCount + 2;
  if (header.size() != kFeatureCount + 1 && !labeled) {
    Fail(ErrorCode::kFormat, "feature matrix header has wrong column count");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = SplitCommas(line);
    if (cols.size() != header.size()) Fail(ErrorCode::kFormat, "feature row has wrong column count");
    FeatureRow row;
    row.id = std::string(cols[0]);
    for (size_t i = 0; i < kFeatureCount; ++i) row.values[i] = ParseDouble(cols[i + 1]);
    if (labeled) row.label = std::string(cols.back());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cckg
