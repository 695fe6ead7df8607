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

#include "core/extractor.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <set>

#include "core/error.hpp"
#include "core/text.hpp"
#include "json.hpp"

namespace cckg {
namespace {

using nlohmann::json;

uint64_t MixSeed(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t z = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void AddEndpoints(const KnowledgeGraph& kg, std::span<const TripletId> ids,
                  std::vector<ConceptId>& out) {
  for (TripletId id : ids) {
    const Triplet& t = kg.triplet(id);
    out.push_back(t.head);
    out.push_back(t.tail);
  }
}

void SortUnique(std::vector<ConceptId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Query ParseQuery(std::string_view json_line) {
  json in;
  try {
    in = json::parse(json_line);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("invalid query JSON: ") + e.what());
  }
  Query q;
  try {
    if (!in.contains("id")) Fail(ErrorCode::kFormat, "query is missing 'id'");
    q.id = in.at("id").is_string() ? in.at("id").get<std::string>() : in.at("id").dump();
    q.premise = in.at("premise").get<std::string>();
    q.conclusion = in.at("conclusion").get<std::string>();
    if (in.contains("constituents")) {
      for (const auto& c : in.at("constituents")) {
        Constituent con;
        con.text = c.at("text").get<std::string>();
        con.is_leaf = c.value("is_leaf", false);
        if (c.contains("side")) {
          const auto side = c.at("side").get<std::string>();
          if (side == "premise") {
            con.side = Side::kPremise;
          } else if (side == "conclusion") {
            con.side = Side::kConclusion;
          } else {
            Fail(ErrorCode::kFormat, "constituent side must be premise or conclusion");
          }
        } else if (q.premise.find(con.text) != std::string::npos) {
          con.side = Side::kPremise;
        } else if (q.conclusion.find(con.text) != std::string::npos) {
          con.side = Side::kConclusion;
        } else {
          Fail(ErrorCode::kFormat, "constituent '" + con.text +
                                       "' occurs in neither premise nor conclusion");
        }
        q.constituents.push_back(std::move(con));
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("invalid query JSON: ") + e.what());
  }
  return q;
}

std::vector<ConceptId> Anchors::All() const {
  std::vector<ConceptId> all = premise;
  all.insert(all.end(), conclusion.begin(), conclusion.end());
  SortUnique(all);
  return all;
}

Role Anchors::RoleOf(ConceptId id) const {
  const bool p = std::binary_search(premise.begin(), premise.end(), id);
  const bool c = std::binary_search(conclusion.begin(), conclusion.end(), id);
  if (p && c) return Role::kBoth;
  if (p) return Role::kPremise;
  if (c) return Role::kConclusion;
  return Role::kIntermediate;
}

std::vector<TripletId> TopTriplets(std::span<const double> scores, size_t m) {
  const size_t take = std::min(m, scores.size());
  std::vector<TripletId> ids(scores.size());
  for (TripletId i = 0; i < ids.size(); ++i) ids[i] = i;
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(),
                    [&](TripletId a, TripletId b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  ids.resize(take);
  return ids;
}

Anchors SelectAnchors(const KnowledgeGraph& kg, const TripletScores& scores, size_t m,
                      std::span<const ConstituentScores> constituents) {
  if (m == 0) Fail(ErrorCode::kInvalidArgument, "m must be at least 1");
  const size_t n = kg.triplet_count();
  if (scores.premise.size() != n || scores.conclusion.size() != n) {
    Fail(ErrorCode::kAlignment, "score arrays are not aligned with the knowledge graph");
  }
  Anchors anchors;
  if (m > n) {
    anchors.clamped = true;
    std::cerr << "warning: m=" << m << " exceeds the triplet count " << n
              << "; selecting all triplets\n";
  }
  bool premise_from_constituents = false;
  bool conclusion_from_constituents = false;
  for (const auto& c : constituents) {
    if (c.scores.size() != n) {
      Fail(ErrorCode::kAlignment, "constituent scores are not aligned with the knowledge graph");
    }
    auto top = TopTriplets(c.scores, m);
    auto& side_triplets =
        c.side == Side::kPremise ? anchors.premise_triplets : anchors.conclusion_triplets;
    side_triplets.insert(side_triplets.end(), top.begin(), top.end());
    (c.side == Side::kPremise ? premise_from_constituents : conclusion_from_constituents) = true;
    anchors.constituent_triplets.emplace_back(c.text, std::move(top));
  }
  if (!premise_from_constituents) anchors.premise_triplets = TopTriplets(scores.premise, m);
  if (!conclusion_from_constituents) {
    anchors.conclusion_triplets = TopTriplets(scores.conclusion, m);
  }
  AddEndpoints(kg, anchors.premise_triplets, anchors.premise);
  AddEndpoints(kg, anchors.conclusion_triplets, anchors.conclusion);
  SortUnique(anchors.premise);
  SortUnique(anchors.conclusion);
  return anchors;
}

std::string_view ToString(PairMode mode) { return mode == PairMode::kAll ? "all" : "cross"; }

std::string_view ToString(SearchMode mode) {
  switch (mode) {
    case SearchMode::kWeighted: return "weighted";
    case SearchMode::kUnweightedOne: return "unweighted-one";
    case SearchMode::kUnweightedAll: return "unweighted-all";
  }
  return "weighted";
}

PairMode ParsePairMode(std::string_view name) {
  if (name == "all") return PairMode::kAll;
  if (name == "cross") return PairMode::kCross;
  Fail(ErrorCode::kInvalidArgument, "unknown pair mode '" + std::string(name) + "'");
}

SearchMode ParseSearchMode(std::string_view name) {
  if (name == "weighted") return SearchMode::kWeighted;
  if (name == "unweighted-one" || name == "unweighted_one") return SearchMode::kUnweightedOne;
  if (name == "unweighted-all" || name == "unweighted_all") return SearchMode::kUnweightedAll;
  Fail(ErrorCode::kInvalidArgument, "unknown search mode '" + std::string(name) + "'");
}

std::vector<std::pair<ConceptId, ConceptId>> AnchorPairs(const Anchors& anchors,
                                                         PairMode mode) {
  std::vector<std::pair<ConceptId, ConceptId>> pairs;
  if (mode == PairMode::kAll) {
    const auto all = anchors.All();
    for (size_t i = 0; i < all.size(); ++i) {
      for (size_t j = i + 1; j < all.size(); ++j) pairs.emplace_back(all[i], all[j]);
    }
    return pairs;
  }
  for (ConceptId p : anchors.premise) {
    for (ConceptId c : anchors.conclusion) {
      if (p == c) continue;
      pairs.emplace_back(std::min(p, c), std::max(p, c));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

PathSearchResult DijkstraPaths(const Adjacency& graph, std::span<const double> weights,
                               std::span<const std::pair<ConceptId, ConceptId>> pairs) {
  std::map<ConceptId, std::vector<ConceptId>> by_source;
  for (const auto& [a, b] : pairs) by_source[a].push_back(b);
  PathSearchResult result;
  ShortestPathSearch search(graph, weights);
  for (auto& [source, targets] : by_source) {
    std::sort(targets.begin(), targets.end());
    search.Run(source, targets);
    for (ConceptId target : targets) {
      auto path = search.CanonicalPath(target);
      if (!path) {
        ++result.skipped_pairs;
        continue;
      }
      result.paths.push_back({source, target, std::move(*path)});
    }
  }
  return result;
}

std::vector<double> EdgeWeights(std::span<const double> s_a) {
  std::vector<double> w(s_a.size());
  for (size_t i = 0; i < s_a.size(); ++i) w[i] = EdgeWeight(s_a[i]);
  return w;
}

Cckg BuildCckg(const KnowledgeGraph& kg, std::span<const double> s_a, const Anchors& anchors,
               const ExtractOptions& options) {
  if (options.mode == SearchMode::kWeighted) {
    const auto costs = EdgeWeights(s_a);
    return BuildCckgWithCosts(kg, s_a, costs, anchors, options);
  }
  return BuildCckgWithCosts(kg, s_a, {}, anchors, options);
}

Cckg BuildCckgWithCosts(const KnowledgeGraph& kg, std::span<const double> s_a,
                        std::span<const double> costs, const Anchors& anchors,
                        const ExtractOptions& options) {
  if (s_a.size() != kg.triplet_count()) {
    Fail(ErrorCode::kAlignment, "argument scores are not aligned with the knowledge graph");
  }
  if (options.k == 0) Fail(ErrorCode::kInvalidArgument, "k must be at least 1");
  const auto all_anchors = anchors.All();
  if (all_anchors.empty()) Fail(ErrorCode::kInvalidArgument, "no anchor concepts");

  std::vector<double> unit;
  std::span<const double> weights = costs;
  if (options.mode != SearchMode::kWeighted) {
    unit.assign(kg.triplet_count(), 1.0);
    weights = unit;
  } else if (costs.size() != kg.triplet_count()) {
    Fail(ErrorCode::kAlignment, "edge costs are not aligned with the knowledge graph");
  }

  const auto pairs = AnchorPairs(anchors, options.pairs);
  std::vector<AnchorPath> found;
  size_t skipped = 0;

  if (options.mode == SearchMode::kWeighted && options.k == 1) {
    auto result = DijkstraPaths(kg.adjacency(), weights, pairs);
    found = std::move(result.paths);
    skipped = result.skipped_pairs;
  } else if (options.mode == SearchMode::kWeighted) {
    for (const auto& [a, b] : pairs) {
      auto paths = YenPaths(kg.adjacency(), weights, a, b, options.k);
      if (paths.empty()) {
        ++skipped;
        continue;
      }
      for (auto& p : paths) found.push_back({a, b, std::move(p)});
    }
  } else {
    std::map<ConceptId, std::vector<ConceptId>> by_source;
    for (const auto& [a, b] : pairs) by_source[a].push_back(b);
    ShortestPathSearch search(kg.adjacency(), weights);
    for (const auto& [source, targets] : by_source) {
      search.Run(source, targets);
      for (ConceptId target : targets) {
        if (!search.Reached(target)) {
          ++skipped;
          continue;
        }
        if (options.mode == SearchMode::kUnweightedOne) {
          auto p = search.SamplePath(target, MixSeed(options.seed, source, target));
          found.push_back({source, target, std::move(*p)});
          continue;
        }
        bool truncated = false;
        auto paths = search.EnumeratePaths(target, kMaxEnumeratedPaths, &truncated);
        if (truncated) {
          std::set<uint32_t> covered;
          for (const auto& p : paths) covered.insert(p.edges.begin(), p.edges.end());
          for (uint32_t e : search.ShortestPathEdges(target)) {
            if (covered.contains(e)) continue;
            auto p = search.PathThroughEdge(target, e);
            covered.insert(p->edges.begin(), p->edges.end());
            paths.push_back(std::move(*p));
          }
        }
        for (auto& p : paths) found.push_back({source, target, std::move(p)});
      }
    }
  }

  // Assemble: nodes by concept id, edges by triplet id.
  std::set<ConceptId> node_ids(all_anchors.begin(), all_anchors.end());
  std::set<TripletId> edge_ids;
  for (const auto& ap : found) {
    node_ids.insert(ap.path.nodes.begin(), ap.path.nodes.end());
    edge_ids.insert(ap.path.edges.begin(), ap.path.edges.end());
  }
  Cckg graph;
  std::map<ConceptId, uint32_t> node_index;
  for (ConceptId c : node_ids) {
    node_index[c] = static_cast<uint32_t>(graph.nodes.size());
    graph.nodes.push_back({kg.concept_label(c), anchors.RoleOf(c), static_cast<int64_t>(c)});
  }
  std::map<TripletId, uint32_t> edge_index;
  for (TripletId t : edge_ids) {
    edge_index[t] = static_cast<uint32_t>(graph.edges.size());
    const Triplet& tr = kg.triplet(t);
    CckgEdge edge;
    edge.head = node_index.at(tr.head);
    edge.tail = node_index.at(tr.tail);
    edge.relation = kg.relation_name(tr.relation);
    edge.triplet_id = t;
    edge.s_a = s_a[t];
    edge.weight = EdgeWeight(s_a[t]);
    graph.edges.push_back(std::move(edge));
  }
  for (const auto& ap : found) {
    CckgPath p;
    p.source = node_index.at(ap.source);
    p.target = node_index.at(ap.target);
    for (uint32_t e : ap.path.edges) p.edges.push_back(edge_index.at(e));
    p.cost = ap.path.cost;
    graph.paths.push_back(std::move(p));
  }
  graph.skipped_pairs = skipped;
  return graph;
}

Cckg Extract(const KnowledgeGraph& kg, const EmbeddingMatrix& triplet_embeddings,
             const TextEncoder& encoder, const Query& query, const ExtractOptions& options) {
  if (triplet_embeddings.rows() != kg.triplet_count()) {
    Fail(ErrorCode::kAlignment,
         "embedding matrix has " + std::to_string(triplet_embeddings.rows()) +
             " rows but the knowledge graph has " + std::to_string(kg.triplet_count()) +
             " triplets");
  }
  if (encoder.dim() != triplet_embeddings.dim()) {
    Fail(ErrorCode::kAlignment, "encoder dimension " + std::to_string(encoder.dim()) +
                                    " does not match triplet embedding dimension " +
                                    std::to_string(triplet_embeddings.dim()));
  }
  std::vector<std::vector<float>> vectors;
  vectors.push_back(encoder.Encode(query.premise));
  vectors.push_back(encoder.Encode(query.conclusion));
  vectors.push_back(encoder.Encode(query.ArgumentText()));
  std::vector<const Constituent*> usable;
  for (const auto& c : query.constituents) {
    if (c.is_leaf) continue;
    usable.push_back(&c);
    vectors.push_back(encoder.Encode(c.text));
  }
  std::vector<std::span<const float>> views(vectors.begin(), vectors.end());
  auto scored = ScoreRows(triplet_embeddings, views);

  TripletScores scores;
  scores.premise = std::move(scored[0]);
  scores.conclusion = std::move(scored[1]);
  scores.argument = std::move(scored[2]);
  std::vector<ConstituentScores> constituent_scores;
  for (size_t i = 0; i < usable.size(); ++i) {
    constituent_scores.push_back({usable[i]->text, usable[i]->side, std::move(scored[3 + i])});
  }

  const Anchors anchors = SelectAnchors(kg, scores, options.m, constituent_scores);
  Cckg graph = BuildCckg(kg, scores.argument, anchors, options);
  graph.id = query.id;
  graph.premise = query.premise;
  graph.conclusion = query.conclusion;
  return graph;
}

}  // namespace cckg
