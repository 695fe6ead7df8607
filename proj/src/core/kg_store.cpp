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

#include "core/kg_store.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/text.hpp"

namespace cckg {

Adjacency::Adjacency(size_t num_nodes,
                     std::span<const std::pair<uint32_t, uint32_t>> endpoints)
    : offsets_(num_nodes + 1, 0), num_edges_(endpoints.size()) {
  for (const auto& [a, b] : endpoints) {
    ++offsets_[a + 1];
    if (a != b) ++offsets_[b + 1];
  }
  for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  entries_.resize(offsets_.back());
  std::vector<uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (uint32_t e = 0; e < endpoints.size(); ++e) {
    const auto [a, b] = endpoints[e];
    entries_[cursor[a]++] = Incidence{e, b};
    if (a != b) entries_[cursor[b]++] = Incidence{e, a};
  }
}

const std::string& KnowledgeGraph::concept_label(ConceptId id) const {
  if (id >= concepts_.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "concept id " + std::to_string(id) + " out of range");
  }
  return concepts_[id];
}

const std::string& KnowledgeGraph::relation_name(RelationId id) const {
  if (id >= relations_.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "relation id " + std::to_string(id) + " out of range");
  }
  return relations_[id];
}

const Triplet& KnowledgeGraph::triplet(TripletId id) const {
  if (id >= triplets_.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "triplet id " + std::to_string(id) + " out of range");
  }
  return triplets_[id];
}

std::optional<ConceptId> KnowledgeGraph::find_concept(
    std::string_view label) const {
  auto it = concept_index_.find(NormalizeLabel(label));
  if (it == concept_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationId> KnowledgeGraph::find_relation(
    std::string_view name) const {
  auto it = relation_index_.find(std::string(Trim(name)));
  if (it == relation_index_.end()) return std::nullopt;
  return it->second;
}

size_t KnowledgeGraph::degree(ConceptId id) const {
  if (id >= concepts_.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "concept id " + std::to_string(id) + " out of range");
  }
  return adjacency_.degree(id);
}

void KnowledgeGraph::BuildIndex() {
  if (concept_index_.size() != concepts_.size()) {
    concept_index_.clear();
    concept_index_.reserve(concepts_.size());
    for (ConceptId i = 0; i < concepts_.size(); ++i) {
      concept_index_.emplace(concepts_[i], i);
    }
  }
  if (relation_index_.size() != relations_.size()) {
    relation_index_.clear();
    for (RelationId i = 0; i < relations_.size(); ++i) {
      relation_index_.emplace(relations_[i], i);
    }
  }
  std::vector<std::pair<uint32_t, uint32_t>> endpoints;
  endpoints.reserve(triplets_.size());
  for (const Triplet& t : triplets_) endpoints.emplace_back(t.head, t.tail);
  adjacency_ = Adjacency(concepts_.size(), endpoints);
}

size_t KnowledgeGraphBuilder::TripletHash::operator()(
    const Triplet& t) const noexcept {
  uint64_t h = (static_cast<uint64_t>(t.head) << 32) ^ t.tail;
  h ^= static_cast<uint64_t>(t.relation) * 0x9e3779b97f4a7c15ULL;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 32;
  return static_cast<size_t>(h);
}

ConceptId KnowledgeGraphBuilder::InternConcept(std::string label) {
  auto [it, inserted] = graph_.concept_index_.try_emplace(
      label, static_cast<ConceptId>(graph_.concepts_.size()));
  if (inserted) graph_.concepts_.push_back(std::move(label));
  return it->second;
}

RelationId KnowledgeGraphBuilder::InternRelation(std::string name) {
  auto [it, inserted] = graph_.relation_index_.try_emplace(
      name, static_cast<RelationId>(graph_.relations_.size()));
  if (inserted) graph_.relations_.push_back(std::move(name));
  return it->second;
}

bool KnowledgeGraphBuilder::Add(std::string_view head,
                                std::string_view relation,
                                std::string_view tail) {
  std::string head_label = NormalizeLabel(head);
  std::string tail_label = NormalizeLabel(tail);
  std::string relation_name(Trim(relation));
  if (head_label.empty() || tail_label.empty() || relation_name.empty()) {
    Fail(ErrorCode::kFormat, "empty field in triplet");
  }
  // Intern in head, tail order so ids follow first appearance.
  Triplet t;
  t.head = InternConcept(std::move(head_label));
  t.relation = InternRelation(std::move(relation_name));
  t.tail = InternConcept(std::move(tail_label));
  if (!seen_.insert(t).second) return false;
  graph_.triplets_.push_back(t);
  return true;
}

KnowledgeGraph KnowledgeGraphBuilder::Build() && {
  seen_.clear();
  graph_.BuildIndex();
  return std::move(graph_);
}

namespace {

void ReadTsvInto(const std::filesystem::path& path,
                 const std::unordered_set<std::string>& exclude_relations,
                 KnowledgeGraphBuilder& builder) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (Trim(view).empty()) continue;
    const auto fields = SplitTabs(view);
    if (fields.size() != 3) {
      Fail(ErrorCode::kFormat,
           path.string() + ":" + std::to_string(line_number) + ": expected 3 "
               "tab-separated columns, found " + std::to_string(fields.size()));
    }
    if (exclude_relations.contains(std::string(Trim(fields[1])))) continue;
    try {
      builder.Add(fields[0], fields[1], fields[2]);
    } catch (const Error& e) {
      Fail(ErrorCode::kFormat, path.string() + ":" +
                                   std::to_string(line_number) + ": " +
                                   e.what());
    }
  }
}

template <typename T>
void WritePod(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<uint64_t>(value) >> (8 * i)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T ReadPod(std::istream& in, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) Fail(ErrorCode::kFormat, "truncated snapshot '" + path.string() + "'");
  uint64_t value = 0;
  for (size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<uint64_t>(bytes[i]) << (8 * i);
  }
  return static_cast<T>(value);
}

void WriteStrings(std::ostream& out, std::span<const std::string> strings) {
  WritePod<uint64_t>(out, strings.size());
  for (const auto& s : strings) {
    WritePod<uint32_t>(out, static_cast<uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
}

std::vector<std::string> ReadStrings(std::istream& in,
                                     const std::filesystem::path& path) {
  const auto count = ReadPod<uint64_t>(in, path);
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(count));
  for (uint64_t i = 0; i < count; ++i) {
    const auto len = ReadPod<uint32_t>(in, path);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) Fail(ErrorCode::kFormat, "truncated snapshot '" + path.string() + "'");
    out.push_back(std::move(s));
  }
  return out;
}

constexpr char kSnapshotMagic[4] = {'C', 'K', 'G', '1'};

}  // namespace

KnowledgeGraph LoadKg(const std::filesystem::path& path,
                      const std::unordered_set<std::string>& exclude_relations) {
  KnowledgeGraphBuilder builder;
  ReadTsvInto(path, exclude_relations, builder);
  if (builder.triplet_count() == 0) {
    Fail(ErrorCode::kFormat, "'" + path.string() + "' contains no triplets");
  }
  return std::move(builder).Build();
}

KnowledgeGraph MergeGoldGraphs(std::span<const std::filesystem::path> files) {
  if (files.empty()) {
    Fail(ErrorCode::kInvalidArgument, "no gold graph files to merge");
  }
  KnowledgeGraphBuilder builder;
  for (const auto& file : files) {
    try {
      ReadTsvInto(file, {}, builder);
    } catch (const Error& e) {
      Fail(e.code(), "gold graph '" + file.string() + "': " + e.what());
    }
  }
  if (builder.triplet_count() == 0) {
    Fail(ErrorCode::kFormat, "gold graphs contain no triplets");
  }
  return std::move(builder).Build();
}

void SaveSnapshot(const KnowledgeGraph& kg, const std::filesystem::path& path) {
  AtomicFileWriter writer(path, /*binary=*/true);
  auto& out = writer.stream();
  out.write(kSnapshotMagic, 4);
  WritePod<uint16_t>(out, kSnapshotVersion);
  WriteStrings(out, kg.concept_labels());
  std::vector<std::string> relations;
  for (RelationId r = 0; r < kg.relation_count(); ++r) {
    relations.push_back(kg.relation_name(r));
  }
  WriteStrings(out, relations);
  WritePod<uint64_t>(out, kg.triplet_count());
  for (const Triplet& t : kg.triplets()) {
    WritePod<uint32_t>(out, t.head);
    WritePod<uint32_t>(out, t.relation);
    WritePod<uint32_t>(out, t.tail);
  }
  writer.Commit();
}

bool IsSnapshotFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  return in && std::memcmp(magic, kSnapshotMagic, 4) == 0;
}

KnowledgeGraph LoadSnapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kSnapshotMagic, 4) != 0) {
    Fail(ErrorCode::kFormat, "'" + path.string() + "' is not a CKG1 snapshot");
  }
  const auto version = ReadPod<uint16_t>(in, path);
  if (version != kSnapshotVersion) {
    Fail(ErrorCode::kFormat, "snapshot '" + path.string() + "' has version " +
                                 std::to_string(version) + ", expected " +
                                 std::to_string(kSnapshotVersion) +
                                 "; rebuild it with `cckg index`");
  }
  KnowledgeGraph kg;
  kg.concepts_ = ReadStrings(in, path);
  kg.relations_ = ReadStrings(in, path);
  const auto n = ReadPod<uint64_t>(in, path);
  kg.triplets_.resize(static_cast<size_t>(n));
  std::vector<unsigned char> raw(static_cast<size_t>(n) * 12);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (!in) Fail(ErrorCode::kFormat, "truncated snapshot '" + path.string() + "'");
  auto u32 = [&](size_t offset) {
    return static_cast<uint32_t>(raw[offset]) |
           static_cast<uint32_t>(raw[offset + 1]) << 8 |
           static_cast<uint32_t>(raw[offset + 2]) << 16 |
           static_cast<uint32_t>(raw[offset + 3]) << 24;
  };
  for (size_t i = 0; i < kg.triplets_.size(); ++i) {
    Triplet& t = kg.triplets_[i];
    t.head = u32(12 * i);
    t.relation = u32(12 * i + 4);
    t.tail = u32(12 * i + 8);
    if (t.head >= kg.concepts_.size() || t.tail >= kg.concepts_.size() ||
        t.relation >= kg.relations_.size()) {
      Fail(ErrorCode::kFormat, "corrupt snapshot '" + path.string() +
                                   "': triplet " + std::to_string(i) +
                                   " references an unknown id");
    }
  }
  if (kg.triplets_.empty()) {
    Fail(ErrorCode::kFormat, "snapshot '" + path.string() + "' is empty");
  }
  kg.BuildIndex();
  return kg;
}

KnowledgeGraph LoadAnyKg(const std::filesystem::path& path,
                         const std::unordered_set<std::string>& exclude_relations) {
  if (!IsSnapshotFile(path)) return LoadKg(path, exclude_relations);
  KnowledgeGraph snapshot = LoadSnapshot(path);
  if (exclude_relations.empty()) return snapshot;
  KnowledgeGraphBuilder builder;
  for (const Triplet& t : snapshot.triplets()) {
    const auto& relation = snapshot.relation_name(t.relation);
    if (exclude_relations.contains(relation)) continue;
    builder.Add(snapshot.concept_label(t.head), relation,
                snapshot.concept_label(t.tail));
  }
  if (builder.triplet_count() == 0) {
    Fail(ErrorCode::kFormat, "no triplets left after relation exclusion");
  }
  return std::move(builder).Build();
}

}  // namespace cckg
