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
#include <string>
#include <vector>

namespace cckg {

struct GedEdge {
  uint32_t head = 0;
  uint32_t tail = 0;
  std::string label;
};

// Directed, node- and edge-labeled multigraph.
struct GedGraph {
  std::vector<std::string> labels;
  std::vector<GedEdge> edges;
};

struct GedOptions {
  double timeout_seconds = 1.0;
  // Searches at or below this size always run to completion.
  size_t exact_node_limit = 10;
};

struct GedResult {
  double distance = 0.0;  // number of unit-cost edits
  bool exact = true;
  size_t expanded = 0;
};

// Unit-cost graph edit distance (node/edge insert, delete, relabel) by
// depth-first branch and bound over node mappings.
GedResult GraphEditDistance(const GedGraph& a, const GedGraph& b, const GedOptions& options = {});

// Edit cost of a fixed node mapping: map[i] is the node of `b` that node i
// of `a` maps to, or -1 for deletion. Unmapped nodes of `b` are inserted.
double MappingCost(const GedGraph& a, const GedGraph& b, const std::vector<int64_t>& map);

// distance / (max(|V_a|, |V_b|) + max(|E_a|, |E_b|)), clipped to [0, 1].
double NormalizeGed(double distance, const GedGraph& a, const GedGraph& b);

}  // namespace cckg
