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
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cckg {

// Row-major float32 matrix whose rows are unit vectors.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(size_t rows, size_t dim, std::vector<float> data);

  size_t rows() const { return rows_; }
  size_t dim() const { return dim_; }
  std::span<const float> row(size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const float> data() const { return data_; }

  // Rescales rows whose L2 norm is off by more than `tolerance`; returns
  // how many rows were touched. Zero rows are rejected.
  size_t NormalizeRows(double tolerance = 1e-4);

 private:
  size_t rows_ = 0;
  size_t dim_ = 0;
  std::vector<float> data_;
};

// Cosine similarities of every triplet to the premise, the conclusion and
// the whole argument.
struct TripletScores {
  std::vector<double> premise;
  std::vector<double> conclusion;
  std::vector<double> argument;

  size_t size() const { return argument.size(); }
};

// EMB1: magic, u32 rows, u32 dim, little-endian float32 payload.
EmbeddingMatrix LoadEmbeddings(const std::filesystem::path& path,
                               size_t* renormalized_rows = nullptr);
void SaveEmbeddings(const EmbeddingMatrix& matrix,
                    const std::filesystem::path& path);

// Sidecar `<emb>.src` naming the entity source the rows are aligned to.
struct EmbeddingSource {
  std::string source;
  size_t rows = 0;
};
std::filesystem::path SidecarPath(const std::filesystem::path& emb_path);
void WriteSidecar(const std::filesystem::path& emb_path,
                  const EmbeddingSource& source);
// Returns false when no sidecar exists.
bool ReadSidecar(const std::filesystem::path& emb_path, EmbeddingSource* out);

// Similarity of every row to each query in one pass over the matrix.
// Accumulates in double in fixed per-row order.
std::vector<std::vector<double>> ScoreRows(
    const EmbeddingMatrix& matrix,
    std::span<const std::span<const float>> queries);

TripletScores ScoreTriplets(const EmbeddingMatrix& triplet_embeddings,
                            std::span<const float> premise,
                            std::span<const float> conclusion,
                            std::span<const float> argument);

double Dot(std::span<const float> a, std::span<const float> b);
void NormalizeInPlace(std::span<float> v);

// Lexical hashing encoder: character trigrams of each token, FNV-1a 64
// hashed into signed buckets, then L2-normalized.
std::vector<float> MockEncode(std::string_view text, size_t dim);

class TextEncoder {
 public:
  virtual ~TextEncoder() = default;
  virtual size_t dim() const = 0;
  virtual std::vector<float> Encode(std::string_view text) const = 0;
};

class MockEncoder final : public TextEncoder {
 public:
  explicit MockEncoder(size_t dim);
  size_t dim() const override { return dim_; }
  std::vector<float> Encode(std::string_view text) const override;

 private:
  size_t dim_;
};

// Looks texts up in a precomputed table: line i of `texts_path` is
// embedded by row i of the EMB1 file. Unknown texts are an error.
class LookupEncoder final : public TextEncoder {
 public:
  LookupEncoder(const std::filesystem::path& texts_path,
                const std::filesystem::path& embeddings_path);
  size_t dim() const override { return matrix_.dim(); }
  std::vector<float> Encode(std::string_view text) const override;

 private:
  EmbeddingMatrix matrix_;
  std::unordered_map<std::string, size_t> index_;
};

// Embeds `texts` row by row with `encoder`.
EmbeddingMatrix EncodeAll(const TextEncoder& encoder,
                          std::span<const std::string> texts);

// Row i embeds text_of(i); avoids materializing all texts at once.
EmbeddingMatrix EncodeRows(const TextEncoder& encoder, size_t count,
                           const std::function<std::string(size_t)>& text_of);

}  // namespace cckg
