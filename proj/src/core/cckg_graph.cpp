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

#include "core/cckg_graph.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "core/error.hpp"
#include "json.hpp"

namespace cckg {
namespace {

using nlohmann::json;

std::string DotEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view RoleColor(Role role) {
  switch (role) {
    case Role::kPremise: return "violet";
    case Role::kConclusion: return "orange";
    case Role::kBoth: return "tomato";
    case Role::kIntermediate: return "lightgrey";
  }
  return "white";
}

}  // namespace

std::string_view ToString(Role role) {
  switch (role) {
    case Role::kPremise: return "premise";
    case Role::kConclusion: return "conclusion";
    case Role::kBoth: return "both";
    case Role::kIntermediate: return "intermediate";
  }
  return "intermediate";
}

Role ParseRole(std::string_view name) {
  if (name == "premise") return Role::kPremise;
  if (name == "conclusion") return Role::kConclusion;
  if (name == "both") return Role::kBoth;
  if (name == "intermediate") return Role::kIntermediate;
  Fail(ErrorCode::kFormat, "unknown node role '" + std::string(name) + "'");
}

std::string Cckg::ArgumentText() const { return premise + " " + conclusion; }

Adjacency Cckg::BuildAdjacency() const {
  std::vector<std::pair<uint32_t, uint32_t>> endpoints;
  endpoints.reserve(edges.size());
  for (const auto& e : edges) endpoints.emplace_back(e.head, e.tail);
  return Adjacency(nodes.size(), endpoints);
}

std::optional<uint32_t> Cckg::FindNode(std::string_view label) const {
  for (uint32_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].label == label) return i;
  }
  return std::nullopt;
}

int64_t Cckg::OrderKey(uint32_t node) const {
  return nodes[node].concept_id >= 0 ? nodes[node].concept_id : node;
}

std::string CckgToJson(const Cckg& graph) {
  json out;
  out["id"] = graph.id;
  out["premise"] = graph.premise;
  out["conclusion"] = graph.conclusion;
  json nodes = json::array();
  for (const auto& n : graph.nodes) {
    json node{{"label", n.label}, {"role", ToString(n.role)}};
    if (n.concept_id >= 0) node["concept_id"] = n.concept_id;
    nodes.push_back(std::move(node));
  }
  out["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : graph.edges) {
    json edge{{"head", graph.nodes[e.head].label},
              {"relation", e.relation},
              {"tail", graph.nodes[e.tail].label},
              {"s_A", e.s_a},
              {"weight", e.weight}};
    if (e.triplet_id >= 0) edge["triplet_id"] = e.triplet_id;
    edges.push_back(std::move(edge));
  }
  out["edges"] = std::move(edges);
  json paths = json::array();
  for (const auto& p : graph.paths) {
    paths.push_back({{"source", graph.nodes[p.source].label},
                     {"target", graph.nodes[p.target].label},
                     {"edges", p.edges},
                     {"weight", p.cost}});
  }
  out["paths"] = std::move(paths);
  out["skipped_pairs"] = graph.skipped_pairs;
  if (graph.pruned_concepts) out["pruned_concepts"] = *graph.pruned_concepts;
  return out.dump(1) + "\n";
}

Cckg CckgFromJson(std::string_view json_text) {
  json in;
  try {
    in = json::parse(json_text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("invalid CCKG JSON: ") + e.what());
  }
  Cckg graph;
  try {
    graph.id = in.value("id", "");
    graph.premise = in.value("premise", "");
    graph.conclusion = in.value("conclusion", "");
    std::unordered_map<std::string, uint32_t> index;
    for (const auto& n : in.at("nodes")) {
      CckgNode node;
      node.label = n.at("label").get<std::string>();
      node.role = ParseRole(n.value("role", "intermediate"));
      node.concept_id = n.value("concept_id", int64_t{-1});
      if (!index.emplace(node.label, static_cast<uint32_t>(graph.nodes.size())).second) {
        Fail(ErrorCode::kFormat, "duplicate node label '" + node.label + "'");
      }
      graph.nodes.push_back(std::move(node));
    }
    auto lookup = [&](const std::string& label) {
      auto it = index.find(label);
      if (it == index.end()) Fail(ErrorCode::kFormat, "edge references unknown node '" + label + "'");
      return it->second;
    };
    for (const auto& e : in.at("edges")) {
      CckgEdge edge;
      edge.head = lookup(e.at("head").get<std::string>());
      edge.tail = lookup(e.at("tail").get<std::string>());
      edge.relation = e.at("relation").get<std::string>();
      edge.s_a = e.value("s_A", 0.0);
      edge.weight = e.value("weight", EdgeWeight(edge.s_a));
      edge.triplet_id = e.value("triplet_id", int64_t{-1});
      graph.edges.push_back(std::move(edge));
    }
    if (in.contains("paths")) {
      for (const auto& p : in.at("paths")) {
        CckgPath path;
        path.source = lookup(p.at("source").get<std::string>());
        path.target = lookup(p.at("target").get<std::string>());
        path.edges = p.at("edges").get<std::vector<uint32_t>>();
        path.cost = p.value("weight", 0.0);
        graph.paths.push_back(std::move(path));
      }
    }
    graph.skipped_pairs = in.value("skipped_pairs", size_t{0});
    if (in.contains("pruned_concepts")) {
      graph.pruned_concepts = in.at("pruned_concepts").get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("invalid CCKG JSON: ") + e.what());
  }
  ValidateCckg(graph);
  return graph;
}

std::string CckgToDot(const Cckg& graph) {
  std::ostringstream out;
  out << "graph \"" << DotEscape(graph.id) << "\" {\n";
  out << "  node [style=filled, shape=box];\n";
  for (const auto& n : graph.nodes) {
    out << "  \"" << DotEscape(n.label) << "\" [fillcolor=" << RoleColor(n.role) << "];\n";
  }
  for (const auto& e : graph.edges) {
    out << "  \"" << DotEscape(graph.nodes[e.head].label) << "\" -- \""
        << DotEscape(graph.nodes[e.tail].label) << "\" [label=\"" << DotEscape(e.relation)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

void ValidateCckg(const Cckg& graph) {
  std::unordered_set<std::string> labels;
  for (const auto& n : graph.nodes) {
    if (!labels.insert(n.label).second) {
      Fail(ErrorCode::kFormat, "duplicate node label '" + n.label + "'");
    }
  }
  const auto n = graph.nodes.size();
  for (const auto& e : graph.edges) {
    if (e.head >= n || e.tail >= n) Fail(ErrorCode::kFormat, "edge endpoint out of range");
  }
  for (const auto& p : graph.paths) {
    if (p.source >= n || p.target >= n) Fail(ErrorCode::kFormat, "path endpoint out of range");
    uint32_t cur = p.source;
    for (uint32_t e : p.edges) {
      if (e >= graph.edges.size()) Fail(ErrorCode::kFormat, "path edge out of range");
      const auto& edge = graph.edges[e];
      if (edge.head == cur) {
        cur = edge.tail;
      } else if (edge.tail == cur) {
        cur = edge.head;
      } else {
        Fail(ErrorCode::kFormat, "path edges are not contiguous");
      }
    }
    if (cur != p.target) Fail(ErrorCode::kFormat, "path does not end at its target");
  }
}

}  // namespace cckg
