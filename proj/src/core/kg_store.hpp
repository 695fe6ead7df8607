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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cckg {

using ConceptId = uint32_t;
using RelationId = uint32_t;
using TripletId = uint32_t;

struct Triplet {
  ConceptId head = 0;
  RelationId relation = 0;
  ConceptId tail = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

// One entry of an undirected incidence list.
struct Incidence {
  uint32_t edge = 0;
  uint32_t neighbor = 0;
};

// Undirected multigraph adjacency in CSR form. Every edge appears once in
// each endpoint's list; a self-loop appears once in its node's list.
// Entries within a list are ordered by edge id.
class Adjacency {
 public:
  Adjacency() = default;
  Adjacency(size_t num_nodes,
            std::span<const std::pair<uint32_t, uint32_t>> endpoints);

  size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  size_t num_edges() const { return num_edges_; }
  size_t degree(uint32_t node) const {
    return static_cast<size_t>(offsets_[node + 1] - offsets_[node]);
  }
  std::span<const Incidence> neighbors(uint32_t node) const {
    return {entries_.data() + offsets_[node], degree(node)};
  }

 private:
  std::vector<uint64_t> offsets_;
  std::vector<Incidence> entries_;
  size_t num_edges_ = 0;
};

// Indexed triplet knowledge graph. Immutable once built.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  size_t concept_count() const { return concepts_.size(); }
  size_t relation_count() const { return relations_.size(); }
  size_t triplet_count() const { return triplets_.size(); }

  const std::string& concept_label(ConceptId id) const;
  const std::string& relation_name(RelationId id) const;
  const Triplet& triplet(TripletId id) const;
  std::span<const Triplet> triplets() const { return triplets_; }
  std::span<const std::string> concept_labels() const { return concepts_; }

  std::optional<ConceptId> find_concept(std::string_view label) const;
  std::optional<RelationId> find_relation(std::string_view name) const;

  // Number of incident triplets; parallel edges count separately.
  size_t degree(ConceptId id) const;

  const Adjacency& adjacency() const { return adjacency_; }

 private:
  friend class KnowledgeGraphBuilder;
  friend KnowledgeGraph LoadSnapshot(const std::filesystem::path& path);

  void BuildIndex();

  std::vector<std::string> concepts_;
  std::vector<std::string> relations_;
  std::vector<Triplet> triplets_;
  std::unordered_map<std::string, ConceptId> concept_index_;
  std::unordered_map<std::string, RelationId> relation_index_;
  Adjacency adjacency_;
};

// Accumulates triplets with label normalization and deduplication. Concept
// and relation ids are assigned in order of first appearance.
class KnowledgeGraphBuilder {
 public:
  // Returns false when the triplet was a duplicate.
  bool Add(std::string_view head, std::string_view relation,
           std::string_view tail);
  size_t triplet_count() const { return graph_.triplets_.size(); }
  KnowledgeGraph Build() &&;

 private:
  struct TripletHash {
    size_t operator()(const Triplet& t) const noexcept;
  };

  ConceptId InternConcept(std::string label);
  RelationId InternRelation(std::string name);

  KnowledgeGraph graph_;
  std::unordered_set<Triplet, TripletHash> seen_;
};

// Loads a `head<TAB>relation<TAB>tail` TSV. Triplets whose relation is in
// `exclude_relations` are dropped before id assignment, so concepts only
// reachable through excluded triplets never enter the graph.
KnowledgeGraph LoadKg(const std::filesystem::path& path,
                      const std::unordered_set<std::string>& exclude_relations = {});

// Union of several small triplet graphs (same TSV format).
KnowledgeGraph MergeGoldGraphs(std::span<const std::filesystem::path> files);

// Binary snapshot: "CKG1", u16 version, then string tables and triplets.
inline constexpr uint16_t kSnapshotVersion = 1;
void SaveSnapshot(const KnowledgeGraph& kg, const std::filesystem::path& path);
KnowledgeGraph LoadSnapshot(const std::filesystem::path& path);

bool IsSnapshotFile(const std::filesystem::path& path);

// Snapshot or TSV, decided by the file's magic bytes.
KnowledgeGraph LoadAnyKg(const std::filesystem::path& path,
                         const std::unordered_set<std::string>& exclude_relations = {});

}  // namespace cckg
