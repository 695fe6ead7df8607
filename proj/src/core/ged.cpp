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

#include "core/ged.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <unordered_map>

#include "core/error.hpp"

namespace cckg {
namespace {

// Both graphs with labels interned into one id space and edge label
// multisets stored per ordered node pair.
class Problem {
 public:
  Problem(const GedGraph& a, const GedGraph& b) : n1_(a.labels.size()), n2_(b.labels.size()) {
    std::unordered_map<std::string, int> ids;
    auto intern = [&](const std::string& s) {
      return ids.try_emplace(s, static_cast<int>(ids.size())).first->second;
    };
    for (const auto& l : a.labels) lab1_.push_back(intern(l));
    for (const auto& l : b.labels) lab2_.push_back(intern(l));
    pairs1_.resize(n1_ * n1_);
    pairs2_.resize(n2_ * n2_);
    Fill(a, n1_, pairs1_, intern, edges1_);
    Fill(b, n2_, pairs2_, intern, edges2_);
    for (auto& p : pairs1_) std::sort(p.begin(), p.end());
    for (auto& p : pairs2_) std::sort(p.begin(), p.end());
    num_labels_ = ids.size();
  }

  size_t n1() const { return n1_; }
  size_t n2() const { return n2_; }
  int lab1(size_t u) const { return lab1_[u]; }
  int lab2(size_t v) const { return lab2_[v]; }
  size_t num_labels() const { return num_labels_; }
  const std::vector<int>& pair1(size_t u, size_t v) const { return pairs1_[u * n1_ + v]; }
  const std::vector<int>& pair2(size_t u, size_t v) const { return pairs2_[u * n2_ + v]; }
  struct Arc {
    uint32_t head, tail;
    int label;
  };
  const std::vector<Arc>& edges1() const { return edges1_; }
  const std::vector<Arc>& edges2() const { return edges2_; }

 private:
  template <typename Intern>
  static void Fill(const GedGraph& g, size_t n, std::vector<std::vector<int>>& pairs, Intern& intern,
                   std::vector<Arc>& arcs) {
    for (const auto& e : g.edges) {
      if (e.head >= n || e.tail >= n) Fail(ErrorCode::kInvalidArgument, "edge endpoint out of range");
      const int l = intern(e.label);
      pairs[e.head * n + e.tail].push_back(l);
      arcs.push_back({e.head, e.tail, l});
    }
  }

  size_t n1_, n2_;
  std::vector<int> lab1_, lab2_;
  std::vector<std::vector<int>> pairs1_, pairs2_;
  std::vector<Arc> edges1_, edges2_;
  size_t num_labels_ = 0;
};

// max(|A|, |B|) - |A ∩ B| for sorted multisets.
double PairCost(const std::vector<int>& a, const std::vector<int>& b) {
  size_t common = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(std::max(a.size(), b.size()) - common);
}

const std::vector<int> kEmpty;

class Search {
 public:
  Search(const Problem& p, const GedOptions& options)
      : p_(p), options_(options), map_(p.n1(), -2), used2_(p.n2(), 0), counts_(p.num_labels(), 0) {
    order_.resize(p.n1());
    for (size_t i = 0; i < p.n1(); ++i) order_[i] = i;
    std::vector<size_t> degree(p.n1(), 0);
    for (const auto& e : p.edges1()) {
      ++degree[e.head];
      ++degree[e.tail];
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](size_t x, size_t y) { return degree[x] > degree[y]; });
    force_exact_ = std::max(p.n1(), p.n2()) <= options.exact_node_limit;
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(options.timeout_seconds));
  }

  GedResult Run() {
    // The first descent follows the preferred candidate at every level and
    // provides the initial upper bound.
    best_ = std::numeric_limits<double>::infinity();
    Descend(0, 0.0);
    GedResult r;
    r.distance = best_;
    r.exact = !timed_out_;
    r.expanded = expanded_;
    return r;
  }

 private:
  std::vector<int64_t> Candidates(size_t u) const {
    std::vector<int64_t> same, other;
    for (size_t v = 0; v < p_.n2(); ++v) {
      if (used2_[v]) continue;
      (p_.lab2(v) == p_.lab1(u) ? same : other).push_back(static_cast<int64_t>(v));
    }
    same.insert(same.end(), other.begin(), other.end());
    same.push_back(-1);
    return same;
  }

  double StepCost(size_t depth, size_t u, int64_t t) const {
    double c = t < 0 ? 1.0 : (p_.lab1(u) == p_.lab2(static_cast<size_t>(t)) ? 0.0 : 1.0);
    for (size_t k = 0; k <= depth; ++k) {
      const size_t w = order_[k];
      const int64_t tw = k == depth ? t : map_[w];
      const bool both = t >= 0 && tw >= 0;
      const auto& b_uw = both ? p_.pair2(static_cast<size_t>(t), static_cast<size_t>(tw)) : kEmpty;
      c += PairCost(p_.pair1(u, w), b_uw);
      if (w != u) {
        const auto& b_wu = both ? p_.pair2(static_cast<size_t>(tw), static_cast<size_t>(t)) : kEmpty;
        c += PairCost(p_.pair1(w, u), b_wu);
      }
    }
    return c;
  }

  // Lower bound on the cost of everything not yet fixed after `depth`
  // levels are assigned.
  double LowerBound(size_t depth) {
    std::vector<char> assigned(p_.n1(), 0);
    for (size_t k = 0; k < depth; ++k) assigned[order_[k]] = 1;
    size_t r1 = 0, r2 = 0, common = 0;
    touched_.clear();
    for (size_t u = 0; u < p_.n1(); ++u) {
      if (assigned[u]) continue;
      ++r1;
      Bump(p_.lab1(u));
    }
    for (size_t v = 0; v < p_.n2(); ++v) {
      if (used2_[v]) continue;
      ++r2;
      if (counts_[p_.lab2(v)] > 0) {
        --counts_[p_.lab2(v)];
        ++common;
      }
    }
    double lb = static_cast<double>(std::max(r1, r2) - common);
    Reset();
    size_t e1 = 0, e2 = 0;
    common = 0;
    for (const auto& e : p_.edges1()) {
      if (assigned[e.head] && assigned[e.tail]) continue;
      ++e1;
      Bump(e.label);
    }
    for (const auto& e : p_.edges2()) {
      if (used2_[e.head] && used2_[e.tail]) continue;
      ++e2;
      if (counts_[e.label] > 0) {
        --counts_[e.label];
        ++common;
      }
    }
    Reset();
    return lb + static_cast<double>(std::max(e1, e2) - common);
  }

  void Bump(int label) {
    if (counts_[label]++ == 0) touched_.push_back(label);
  }
  void Reset() {
    for (int l : touched_) counts_[l] = 0;
    touched_.clear();
  }

  double Completion() const {
    double c = 0.0;
    for (size_t v = 0; v < p_.n2(); ++v) {
      if (!used2_[v]) c += 1.0;
    }
    for (const auto& e : p_.edges2()) {
      if (!used2_[e.head] || !used2_[e.tail]) c += 1.0;
    }
    return c;
  }

  bool OutOfTime() {
    if (force_exact_ || timed_out_) return timed_out_;
    if ((expanded_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    return timed_out_;
  }

  void Descend(size_t depth, double cost) {
    ++expanded_;
    if (depth == p_.n1()) {
      best_ = std::min(best_, cost + Completion());
      return;
    }
    const size_t u = order_[depth];
    for (int64_t t : Candidates(u)) {
      if (best_ < std::numeric_limits<double>::infinity() && OutOfTime()) return;
      const double step = StepCost(depth, u, t);
      map_[u] = t;
      if (t >= 0) used2_[static_cast<size_t>(t)] = 1;
      if (cost + step + LowerBound(depth + 1) < best_) Descend(depth + 1, cost + step);
      if (t >= 0) used2_[static_cast<size_t>(t)] = 0;
      map_[u] = -2;
    }
  }

  const Problem& p_;
  GedOptions options_;
  std::vector<size_t> order_;
  std::vector<int64_t> map_;
  std::vector<char> used2_;
  std::vector<size_t> counts_;
  std::vector<int> touched_;
  double best_ = 0.0;
  bool force_exact_ = true;
  bool timed_out_ = false;
  size_t expanded_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

GedResult GraphEditDistance(const GedGraph& a, const GedGraph& b, const GedOptions& options) {
  const Problem problem(a, b);
  Search search(problem, options);
  return search.Run();
}

double MappingCost(const GedGraph& a, const GedGraph& b, const std::vector<int64_t>& map) {
  const Problem p(a, b);
  if (map.size() != p.n1()) Fail(ErrorCode::kInvalidArgument, "mapping size mismatch");
  std::vector<char> used(p.n2(), 0);
  double c = 0.0;
  for (size_t u = 0; u < p.n1(); ++u) {
    const int64_t t = map[u];
    if (t < 0) {
      c += 1.0;
      continue;
    }
    if (static_cast<size_t>(t) >= p.n2() || used[static_cast<size_t>(t)]) {
      Fail(ErrorCode::kInvalidArgument, "mapping is not injective");
    }
    used[static_cast<size_t>(t)] = 1;
    if (p.lab1(u) != p.lab2(static_cast<size_t>(t))) c += 1.0;
  }
  for (size_t v = 0; v < p.n2(); ++v) {
    if (!used[v]) c += 1.0;
  }
  for (size_t u = 0; u < p.n1(); ++u) {
    for (size_t w = 0; w < p.n1(); ++w) {
      const bool both = map[u] >= 0 && map[w] >= 0;
      c += PairCost(p.pair1(u, w),
                    both ? p.pair2(static_cast<size_t>(map[u]), static_cast<size_t>(map[w])) : kEmpty);
    }
  }
  for (const auto& e : p.edges2()) {
    if (!used[e.head] || !used[e.tail]) c += 1.0;
  }
  return c;
}

double NormalizeGed(double distance, const GedGraph& a, const GedGraph& b) {
  const double denom = static_cast<double>(std::max(a.labels.size(), b.labels.size()) +
                                           std::max(a.edges.size(), b.edges.size()));
  if (denom == 0.0) return 0.0;
  return std::clamp(distance / denom, 0.0, 1.0);
}

}  // namespace cckg
