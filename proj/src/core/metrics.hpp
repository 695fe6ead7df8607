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

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/cckg_graph.hpp"
#include "core/embed_store.hpp"
#include "core/ged.hpp"
#include "core/verbalizer.hpp"

namespace cckg {

// Relation key used for matching: ASCII-lowercased with spaces,
// underscores and hyphens removed ("CapableOf" == "capable of").
std::string NormalizeRelation(std::string_view raw);

struct LabeledTriplet {
  std::string head;
  std::string relation;
  std::string tail;
  auto operator<=>(const LabeledTriplet&) const = default;
};

// Explanation graph reduced to normalized concept and triplet sets.
struct LabeledGraph {
  std::vector<std::string> concepts;       // sorted, unique
  std::vector<LabeledTriplet> triplets;    // sorted, unique, normalized
  std::vector<std::string> relation_text;  // display relation per triplet
};

// Triplet fields are normalized; isolated concepts may be added via
// `extra_concepts`.
LabeledGraph MakeLabeledGraph(std::span<const LabeledTriplet> raw,
                              std::span<const std::string> extra_concepts = {});
LabeledGraph LoadGraphTsv(const std::filesystem::path& path);
LabeledGraph GraphFromCckg(const Cckg& graph);
// `.json` files are read as CCKGs, anything else as triplet TSV.
LabeledGraph LoadGraphFile(const std::filesystem::path& path);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Prf SetPrf(size_t matched, size_t predicted, size_t gold);
Prf ConceptPrf(const LabeledGraph& pred, const LabeledGraph& gold);
Prf TripletPrf(const LabeledGraph& pred, const LabeledGraph& gold);

GedGraph ToGedGraph(const LabeledGraph& graph);

using TripletVerbalizer =
    std::function<std::string(std::string_view head, std::string_view relation, std::string_view tail)>;
// Similarity matrix in [0, 1], rows = `pred`, columns = `gold`.
using SimilarityMatrixFn = std::function<std::vector<std::vector<double>>(
    std::span<const std::string> pred, std::span<const std::string> gold)>;

// Renders with `templates` when the relation has one, otherwise as
// "head relation tail" with the relation split into lowercase words.
TripletVerbalizer MakeVerbalizer(const TemplateSet* templates);
// (1 + cos) / 2 of the encoder embeddings.
SimilarityMatrixFn EmbeddingSimilarity(const TextEncoder& encoder);

// Precision/recall/F1 of the best one-to-one triplet alignment.
Prf GraphBertScore(const LabeledGraph& pred, const LabeledGraph& gold,
                   const TripletVerbalizer& verbalize, const SimilarityMatrixFn& similarity);

struct GraphScore {
  Prf concepts;
  Prf triplets;
  double ged = 0.0;  // normalized
  bool ged_exact = true;
  double gbs = 0.0;
};

struct ScoreContext {
  TripletVerbalizer verbalize;
  SimilarityMatrixFn similarity;
  GedOptions ged;
};

GraphScore ScorePair(const LabeledGraph& pred, const LabeledGraph& gold, const ScoreContext& ctx);

struct CorpusReport {
  std::vector<std::string> ids;
  std::vector<GraphScore> scores;
  std::vector<size_t> nodes;  // predicted graph sizes
  std::vector<size_t> edges;
  GraphScore macro;
  double mean_nodes = 0.0;
  double mean_edges = 0.0;
  size_t approximate_ged = 0;
};

// Pairs files by stem; an id present in only one directory is an error.
CorpusReport EvaluateCorpus(const std::filesystem::path& pred_dir,
                            const std::filesystem::path& gold_dir, const ScoreContext& ctx);
CorpusReport Aggregate(std::vector<std::string> ids, std::vector<GraphScore> scores,
                       std::vector<size_t> nodes, std::vector<size_t> edges);

// Aligned text table; P/R/F1 and G-BS as percentages, GED raw.
std::string FormatReportTable(const CorpusReport& report);
// One row per instance plus a final "macro" row.
std::string FormatReportCsv(const CorpusReport& report);

}  // namespace cckg
