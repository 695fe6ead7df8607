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
#include <string>
#include <string_view>
#include <vector>

#include "core/kg_store.hpp"

namespace cckg {

enum class Role { kPremise, kConclusion, kBoth, kIntermediate };

std::string_view ToString(Role role);
Role ParseRole(std::string_view name);

inline bool IsPremiseRole(Role r) { return r == Role::kPremise || r == Role::kBoth; }
inline bool IsConclusionRole(Role r) { return r == Role::kConclusion || r == Role::kBoth; }
inline bool IsAnchorRole(Role r) { return r != Role::kIntermediate; }

struct CckgNode {
  std::string label;
  Role role = Role::kIntermediate;
  int64_t concept_id = -1;  // id in the source KG, -1 when unknown
};

struct CckgEdge {
  uint32_t head = 0;  // node indices
  uint32_t tail = 0;
  std::string relation;
  int64_t triplet_id = -1;
  double s_a = 0.0;
  double weight = 0.5;
};

struct CckgPath {
  uint32_t source = 0;  // node indices
  uint32_t target = 0;
  std::vector<uint32_t> edges;  // indices into Cckg::edges, in path order
  double cost = 0.0;
};

// An argument-specific subgraph. Nodes are kept in ascending concept-id
// order and edges in ascending triplet-id order; paths reference both by
// index.
struct Cckg {
  std::string id;
  std::string premise;
  std::string conclusion;
  std::vector<CckgNode> nodes;
  std::vector<CckgEdge> edges;
  std::vector<CckgPath> paths;
  size_t skipped_pairs = 0;
  std::optional<std::vector<std::string>> pruned_concepts;

  std::string ArgumentText() const;
  Adjacency BuildAdjacency() const;
  std::optional<uint32_t> FindNode(std::string_view label) const;
  // Key for deterministic ordering: concept id when known, else index.
  int64_t OrderKey(uint32_t node) const;
};

// Edge cost for path search; decreasing in the argument similarity.
inline double EdgeWeight(double s_a) {
  const double s = s_a > 1.0 ? 1.0 : (s_a < -1.0 ? -1.0 : s_a);
  return (1.0 - s) / 2.0;
}

// Affinity used by clustering and min-cut; increasing in the similarity.
inline double EdgeAffinity(double s_a) {
  const double s = s_a > 1.0 ? 1.0 : (s_a < -1.0 ? -1.0 : s_a);
  return (1.0 + s) / 2.0;
}

std::string CckgToJson(const Cckg& graph);
Cckg CckgFromJson(std::string_view json_text);
std::string CckgToDot(const Cckg& graph);

// Checks index ranges, label uniqueness and path/edge consistency.
void ValidateCckg(const Cckg& graph);

}  // namespace cckg
