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

#include "core/shortest_paths.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>

#include "core/error.hpp"

namespace cckg {
namespace {

struct QueueEntry {
  double dist;
  uint32_t hops;
  uint32_t node;

  bool operator>(const QueueEntry& o) const {
    return std::tie(dist, hops, node) > std::tie(o.dist, o.hops, o.node);
  }
};

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double PathCost(std::span<const double> weights, std::span<const uint32_t> edges) {
  double cost = 0.0;
  for (uint32_t e : edges) cost += weights[e];
  return cost;
}

bool PathLess(const Path& a, const Path& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  return a.edges < b.edges;
}

ShortestPathSearch::ShortestPathSearch(const Adjacency& graph,
                                       std::span<const double> weights)
    : graph_(graph),
      weights_(weights),
      dist_(graph.num_nodes(), 0.0),
      hops_(graph.num_nodes(), 0),
      state_(graph.num_nodes(), kUnseen),
      stamp_(graph.num_nodes(), 0) {
  if (weights.size() != graph.num_edges()) {
    Fail(ErrorCode::kInvalidArgument,
         "weight count " + std::to_string(weights.size()) + " does not match edge count " +
             std::to_string(graph.num_edges()));
  }
  for (size_t e = 0; e < weights.size(); ++e) {
    if (!(weights[e] >= 0.0) || !std::isfinite(weights[e])) {
      Fail(ErrorCode::kInvalidArgument,
           "edge " + std::to_string(e) + " has negative or non-finite weight");
    }
  }
}

bool ShortestPathSearch::EdgeBanned(uint32_t edge) const {
  return mask_ != nullptr && mask_->banned_edges.contains(edge);
}

void ShortestPathSearch::Run(uint32_t source, std::span<const uint32_t> targets,
                             const SearchMask* mask) {
  if (source >= graph_.num_nodes()) {
    Fail(ErrorCode::kInvalidArgument, "source node out of range");
  }
  for (uint32_t node : touched_) state_[node] = kUnseen;
  touched_.clear();
  mask_ = mask;
  source_ = source;

  std::unordered_set<uint32_t> pending;
  for (uint32_t t : targets) {
    if (t >= graph_.num_nodes()) Fail(ErrorCode::kInvalidArgument, "target node out of range");
    pending.insert(t);
  }
  const bool stop_early = !pending.empty();

  if (mask_ != nullptr && mask_->banned_nodes.contains(source)) return;

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue;
  dist_[source] = 0.0;
  hops_[source] = 0;
  state_[source] = kQueued;
  touched_.push_back(source);
  queue.push({0.0, 0, source});

  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    const uint32_t u = top.node;
    if (state_[u] == kSettled || top.dist != dist_[u] || top.hops != hops_[u]) continue;
    state_[u] = kSettled;
    if (stop_early) {
      pending.erase(u);
      if (pending.empty()) break;
    }
    for (const Incidence& inc : graph_.neighbors(u)) {
      const uint32_t v = inc.neighbor;
      if (v == u || state_[v] == kSettled || EdgeBanned(inc.edge)) continue;
      if (mask_ != nullptr && mask_->banned_nodes.contains(v)) continue;
      const double nd = dist_[u] + weights_[inc.edge];
      const uint32_t nh = hops_[u] + 1;
      if (state_[v] == kUnseen) {
        touched_.push_back(v);
      } else if (std::tie(nd, nh) >= std::tie(dist_[v], hops_[v])) {
        continue;
      }
      state_[v] = kQueued;
      dist_[v] = nd;
      hops_[v] = nh;
      queue.push({nd, nh, v});
    }
  }
}

bool ShortestPathSearch::IsDagEdge(uint32_t from, uint32_t edge, uint32_t to) const {
  return from != to && state_[from] == kSettled && state_[to] == kSettled &&
         !EdgeBanned(edge) && hops_[from] + 1 == hops_[to] &&
         dist_[from] + weights_[edge] == dist_[to];
}

std::vector<uint32_t> ShortestPathSearch::MarkRegion(uint32_t target) const {
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
  std::vector<uint32_t> region{target};
  stamp_[target] = generation_;
  for (size_t head = 0; head < region.size(); ++head) {
    const uint32_t v = region[head];
    for (const Incidence& inc : graph_.neighbors(v)) {
      const uint32_t u = inc.neighbor;
      if (!Marked(u) && IsDagEdge(u, inc.edge, v)) {
        stamp_[u] = generation_;
        region.push_back(u);
      }
    }
  }
  std::sort(region.begin(), region.end(), [&](uint32_t a, uint32_t b) {
    return std::tie(dist_[a], hops_[a], a) < std::tie(dist_[b], hops_[b], b);
  });
  return region;
}

Path ShortestPathSearch::WalkToTarget(uint32_t from, uint32_t target) const {
  Path path;
  path.nodes.push_back(from);
  uint32_t cur = from;
  while (cur != target) {
    bool advanced = false;
    for (const Incidence& inc : graph_.neighbors(cur)) {
      if (Marked(inc.neighbor) && IsDagEdge(cur, inc.edge, inc.neighbor)) {
        path.edges.push_back(inc.edge);
        path.nodes.push_back(inc.neighbor);
        cur = inc.neighbor;
        advanced = true;
        break;
      }
    }
    if (!advanced) Fail(ErrorCode::kInternal, "shortest-path DAG walk got stuck");
  }
  path.cost = dist_[target] - dist_[from];
  return path;
}

std::optional<Path> ShortestPathSearch::CanonicalPath(uint32_t target) const {
  if (target >= graph_.num_nodes() || !Reached(target)) return std::nullopt;
  MarkRegion(target);
  return WalkToTarget(source_, target);
}

std::optional<Path> ShortestPathSearch::PathThroughEdge(uint32_t target, uint32_t edge) const {
  if (target >= graph_.num_nodes() || !Reached(target)) return std::nullopt;
  std::optional<uint32_t> from, to;
  const auto region = MarkRegion(target);
  for (uint32_t v : region) {
    for (const Incidence& inc : graph_.neighbors(v)) {
      if (inc.edge == edge && IsDagEdge(inc.neighbor, edge, v) && Marked(inc.neighbor)) {
        from = inc.neighbor;
        to = v;
        break;
      }
    }
    if (from) break;
  }
  if (!from) return std::nullopt;
  auto prefix = CanonicalPath(*from);
  MarkRegion(target);
  Path suffix = WalkToTarget(*to, target);
  Path path = std::move(*prefix);
  path.edges.push_back(edge);
  path.nodes.insert(path.nodes.end(), suffix.nodes.begin(), suffix.nodes.end());
  path.edges.insert(path.edges.end(), suffix.edges.begin(), suffix.edges.end());
  path.cost = dist_[target];
  return path;
}

std::vector<uint32_t> ShortestPathSearch::ShortestPathEdges(uint32_t target) const {
  std::vector<uint32_t> edges;
  if (target >= graph_.num_nodes() || !Reached(target)) return edges;
  const auto region = MarkRegion(target);
  for (uint32_t v : region) {
    for (const Incidence& inc : graph_.neighbors(v)) {
      if (IsDagEdge(inc.neighbor, inc.edge, v)) edges.push_back(inc.edge);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<Path> ShortestPathSearch::EnumeratePaths(uint32_t target, size_t limit,
                                                     bool* truncated) const {
  std::vector<Path> out;
  if (truncated != nullptr) *truncated = false;
  if (target >= graph_.num_nodes() || !Reached(target) || limit == 0) return out;
  MarkRegion(target);
  Path current;
  current.nodes.push_back(source_);
  bool cut = false;
  std::function<void(uint32_t)> dfs = [&](uint32_t node) {
    if (cut) return;
    if (node == target) {
      if (out.size() == limit) {
        cut = true;
        return;
      }
      Path p = current;
      p.cost = dist_[target];
      out.push_back(std::move(p));
      return;
    }
    for (const Incidence& inc : graph_.neighbors(node)) {
      if (!Marked(inc.neighbor) || !IsDagEdge(node, inc.edge, inc.neighbor)) continue;
      current.edges.push_back(inc.edge);
      current.nodes.push_back(inc.neighbor);
      dfs(inc.neighbor);
      current.edges.pop_back();
      current.nodes.pop_back();
      if (cut) return;
    }
  };
  dfs(source_);
  if (truncated != nullptr) *truncated = cut;
  return out;
}

double ShortestPathSearch::CountPaths(uint32_t target) const {
  if (target >= graph_.num_nodes() || !Reached(target)) return 0.0;
  const auto region = MarkRegion(target);
  std::unordered_map<uint32_t, double> count;
  for (uint32_t v : region) {
    if (v == source_) {
      count[v] = 1.0;
      continue;
    }
    double c = 0.0;
    for (const Incidence& inc : graph_.neighbors(v)) {
      if (IsDagEdge(inc.neighbor, inc.edge, v)) c += count[inc.neighbor];
    }
    count[v] = c;
  }
  return count[target];
}

std::optional<Path> ShortestPathSearch::SamplePath(uint32_t target, uint64_t seed) const {
  if (target >= graph_.num_nodes() || !Reached(target)) return std::nullopt;
  const auto region = MarkRegion(target);
  std::unordered_map<uint32_t, double> count;
  for (uint32_t v : region) {
    if (v == source_) {
      count[v] = 1.0;
      continue;
    }
    double c = 0.0;
    for (const Incidence& inc : graph_.neighbors(v)) {
      if (IsDagEdge(inc.neighbor, inc.edge, v)) c += count[inc.neighbor];
    }
    count[v] = c;
  }
  // Walking backwards and picking predecessor u of v with probability
  // count[u] / count[v] draws each path with probability 1 / count[target].
  uint64_t state = seed;
  std::vector<uint32_t> rev_nodes{target};
  std::vector<uint32_t> rev_edges;
  uint32_t cur = target;
  while (cur != source_) {
    const double unit =
        static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-53;
    const double pick = unit * count[cur];
    double acc = 0.0;
    uint32_t chosen_edge = 0, chosen_node = cur;
    for (const Incidence& inc : graph_.neighbors(cur)) {
      if (!IsDagEdge(inc.neighbor, inc.edge, cur)) continue;
      chosen_edge = inc.edge;
      chosen_node = inc.neighbor;
      acc += count[inc.neighbor];
      if (pick < acc) break;
    }
    if (chosen_node == cur) Fail(ErrorCode::kInternal, "shortest-path sampling got stuck");
    rev_edges.push_back(chosen_edge);
    rev_nodes.push_back(chosen_node);
    cur = chosen_node;
  }
  Path path;
  path.nodes.assign(rev_nodes.rbegin(), rev_nodes.rend());
  path.edges.assign(rev_edges.rbegin(), rev_edges.rend());
  path.cost = dist_[target];
  return path;
}

std::vector<Path> YenPaths(const Adjacency& graph, std::span<const double> weights,
                           uint32_t source, uint32_t target, size_t k) {
  if (k == 0) Fail(ErrorCode::kInvalidArgument, "k must be at least 1");
  ShortestPathSearch search(graph, weights);
  const uint32_t targets[] = {target};
  search.Run(source, targets);
  std::vector<Path> accepted;
  auto first = search.CanonicalPath(target);
  if (!first) return accepted;
  first->cost = PathCost(weights, first->edges);
  accepted.push_back(std::move(*first));

  auto less = [](const Path& a, const Path& b) { return PathLess(a, b); };
  std::set<Path, decltype(less)> candidates(less);
  std::set<std::vector<uint32_t>> known{accepted.front().edges};

  while (accepted.size() < k) {
    const Path previous = accepted.back();
    for (size_t i = 0; i < previous.edges.size(); ++i) {
      const uint32_t spur = previous.nodes[i];
      SearchMask mask;
      for (const Path& p : accepted) {
        if (p.edges.size() > i &&
            std::equal(p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(i),
                       previous.edges.begin())) {
          mask.banned_edges.insert(p.edges[i]);
        }
      }
      for (size_t j = 0; j < i; ++j) mask.banned_nodes.insert(previous.nodes[j]);
      search.Run(spur, targets, &mask);
      auto spur_path = search.CanonicalPath(target);
      if (!spur_path) continue;
      Path candidate;
      candidate.nodes.assign(previous.nodes.begin(),
                             previous.nodes.begin() + static_cast<std::ptrdiff_t>(i));
      candidate.edges.assign(previous.edges.begin(),
                             previous.edges.begin() + static_cast<std::ptrdiff_t>(i));
      candidate.nodes.insert(candidate.nodes.end(), spur_path->nodes.begin(),
                             spur_path->nodes.end());
      candidate.edges.insert(candidate.edges.end(), spur_path->edges.begin(),
                             spur_path->edges.end());
      candidate.cost = PathCost(weights, candidate.edges);
      if (known.insert(candidate.edges).second) candidates.insert(std::move(candidate));
    }
    if (candidates.empty()) break;
    accepted.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return accepted;
}

}  // namespace cckg
