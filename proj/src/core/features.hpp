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
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/cckg_graph.hpp"

namespace cckg {

inline constexpr size_t kFeatureCount = 19;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "n_concepts",          "n_triplets",
    "n_p_concepts",        "n_c_concepts",
    "n_shared",            "n_clusters_weighted",
    "n_clusters_unweighted", "modularity_weighted",
    "modularity_unweighted", "density",
    "transitivity",        "mincut_weighted",
    "mincut_unweighted",   "avg_weighted_pc_length",
    "max_weighted_pc_length", "pc_similarity",
    "nli_entail",          "nli_neutral",
    "nli_contradict",
};

using FeatureVector = std::array<double, kFeatureCount>;

struct NliScores {
  double entail = 1.0 / 3.0;
  double neutral = 1.0 / 3.0;
  double contradict = 1.0 / 3.0;
};

inline constexpr double kNliSumTolerance = 1e-4;

std::array<double, 5> SizeFeatures(const Cckg& graph);
std::array<double, 6> ConnectivityFeatures(const Cckg& graph);
std::array<double, 4> DistanceFeatures(const Cckg& graph);
std::array<double, 4> TextFeatures(std::span<const float> premise_embedding,
                                   std::span<const float> conclusion_embedding,
                                   const NliScores& nli);

FeatureVector ComputeFeatures(const Cckg& graph, std::span<const float> premise_embedding,
                              std::span<const float> conclusion_embedding,
                              const NliScores& nli);

struct FeatureRow {
  std::string id;
  FeatureVector values{};
  std::optional<std::string> label;
};

// Writes `id,<19 features>[,label]`; values use round-trip precision.
// Returns the number of data rows.
size_t ExportMatrix(std::span<const FeatureRow> rows, const std::filesystem::path& out_path);
std::string FormatMatrix(std::span<const FeatureRow> rows);
std::vector<FeatureRow> ParseMatrix(std::string_view csv);

}  // namespace cckg
