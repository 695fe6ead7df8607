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

#include "core/embed_store.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/text.hpp"

namespace cckg {
namespace {

constexpr char kEmbMagic[4] = {'E', 'M', 'B', '1'};

uint32_t ReadU32(std::istream& in, const std::filesystem::path& path) {
  std::array<unsigned char, 4> b;
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) Fail(ErrorCode::kFormat, "truncated embedding file '" + path.string() + "'");
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}

void WriteU32(std::ostream& out, uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff),
                     static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

double Norm(std::span<const float> v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * x;
  return std::sqrt(sum);
}

bool HostIsLittleEndian() {
  const uint32_t probe = 1;
  unsigned char first;
  std::memcpy(&first, &probe, 1);
  return first == 1;
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(size_t rows, size_t dim, std::vector<float> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  if (data_.size() != rows_ * dim_) {
    Fail(ErrorCode::kInvalidArgument, "embedding payload size does not match rows x dim");
  }
}

size_t EmbeddingMatrix::NormalizeRows(double tolerance) {
  size_t touched = 0;
  for (size_t i = 0; i < rows_; ++i) {
    std::span<float> r(data_.data() + i * dim_, dim_);
    const double norm = Norm(r);
    if (norm == 0.0 || !std::isfinite(norm)) {
      Fail(ErrorCode::kFormat, "embedding row " + std::to_string(i) +
                                   " has zero or non-finite norm");
    }
    if (std::abs(norm - 1.0) > tolerance) {
      for (float& x : r) x = static_cast<float>(x / norm);
      ++touched;
    }
  }
  return touched;
}

EmbeddingMatrix LoadEmbeddings(const std::filesystem::path& path,
                               size_t* renormalized_rows) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open embedding file '" + path.string() + "'");
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kEmbMagic, 4) != 0) {
    Fail(ErrorCode::kFormat, "'" + path.string() + "' is not an EMB1 file");
  }
  const uint32_t rows = ReadU32(in, path);
  const uint32_t dim = ReadU32(in, path);
  if (rows == 0) Fail(ErrorCode::kFormat, "embedding file '" + path.string() + "' has zero rows");
  if (dim == 0) Fail(ErrorCode::kFormat, "embedding file '" + path.string() + "' has zero dim");
  std::vector<float> data(static_cast<size_t>(rows) * dim);
  const auto bytes = static_cast<std::streamsize>(data.size() * sizeof(float));
  in.read(reinterpret_cast<char*>(data.data()), bytes);
  if (in.gcount() != bytes) {
    Fail(ErrorCode::kFormat, "truncated embedding file '" + path.string() + "'");
  }
  if (!HostIsLittleEndian()) {
    for (float& x : data) {
      uint32_t v;
      std::memcpy(&v, &x, 4);
      v = __builtin_bswap32(v);
      std::memcpy(&x, &v, 4);
    }
  }
  EmbeddingMatrix matrix(rows, dim, std::move(data));
  const size_t touched = matrix.NormalizeRows();
  if (touched > 0) {
    std::cerr << "warning: " << touched << " of " << rows << " rows in '"
              << path.string() << "' were not unit length and were renormalized\n";
  }
  if (renormalized_rows != nullptr) *renormalized_rows = touched;
  return matrix;
}

void SaveEmbeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
  if (matrix.rows() == 0) Fail(ErrorCode::kInvalidArgument, "refusing to write an empty embedding matrix");
  AtomicFileWriter writer(path, /*binary=*/true);
  auto& out = writer.stream();
  out.write(kEmbMagic, 4);
  WriteU32(out, static_cast<uint32_t>(matrix.rows()));
  WriteU32(out, static_cast<uint32_t>(matrix.dim()));
  if (HostIsLittleEndian()) {
    out.write(reinterpret_cast<const char*>(matrix.data().data()),
              static_cast<std::streamsize>(matrix.data().size() * sizeof(float)));
  } else {
    for (float x : matrix.data()) {
      uint32_t v;
      std::memcpy(&v, &x, 4);
      WriteU32(out, v);
    }
  }
  writer.Commit();
}

std::filesystem::path SidecarPath(const std::filesystem::path& emb_path) {
  return std::filesystem::path(emb_path.string() + ".src");
}

void WriteSidecar(const std::filesystem::path& emb_path, const EmbeddingSource& source) {
  WriteFileAtomically(SidecarPath(emb_path), "source\t" + source.source + "\nrows\t" +
                                                 std::to_string(source.rows) + "\n");
}

bool ReadSidecar(const std::filesystem::path& emb_path, EmbeddingSource* out) {
  std::ifstream in(SidecarPath(emb_path));
  if (!in) return false;
  std::string line;
  while (std::getline(in, line)) {
    const auto fields = SplitTabs(line);
    if (fields.size() != 2) continue;
    if (fields[0] == "source") out->source = std::string(fields[1]);
    if (fields[0] == "rows") out->rows = std::stoull(std::string(fields[1]));
  }
  return true;
}

double Dot(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    Fail(ErrorCode::kInvalidArgument, "dimension mismatch: " + std::to_string(a.size()) +
                                          " vs " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += static_cast<double>(a[i]) * b[i];
  return sum;
}

void NormalizeInPlace(std::span<float> v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * x;
  if (sum == 0.0) return;
  const double inv = 1.0 / std::sqrt(sum);
  for (float& x : v) x = static_cast<float>(x * inv);
}

std::vector<std::vector<double>> ScoreRows(
    const EmbeddingMatrix& matrix, std::span<const std::span<const float>> queries) {
  const size_t dim = matrix.dim();
  for (const auto& q : queries) {
    if (q.size() != dim) {
      Fail(ErrorCode::kInvalidArgument, "query dimension " + std::to_string(q.size()) +
                                            " does not match embedding dimension " +
                                            std::to_string(dim));
    }
  }
  const size_t nq = queries.size();
  std::vector<std::vector<double>> out(nq, std::vector<double>(matrix.rows()));
  // Queries widened once so the inner loop is a plain double FMA chain.
  std::vector<double> wide(nq * dim);
  for (size_t j = 0; j < nq; ++j) {
    for (size_t d = 0; d < dim; ++d) wide[j * dim + d] = queries[j][d];
  }
  const float* data = matrix.data().data();
  for (size_t i = 0; i < matrix.rows(); ++i) {
    const float* r = data + i * dim;
    for (size_t j = 0; j < nq; ++j) {
      const double* q = wide.data() + j * dim;
      double sum = 0.0;
      for (size_t d = 0; d < dim; ++d) sum += static_cast<double>(r[d]) * q[d];
      out[j][i] = sum;
    }
  }
  return out;
}

TripletScores ScoreTriplets(const EmbeddingMatrix& triplet_embeddings,
                            std::span<const float> premise,
                            std::span<const float> conclusion,
                            std::span<const float> argument) {
  const std::array<std::span<const float>, 3> queries = {premise, conclusion, argument};
  auto scored = ScoreRows(triplet_embeddings, queries);
  TripletScores scores;
  scores.premise = std::move(scored[0]);
  scores.conclusion = std::move(scored[1]);
  scores.argument = std::move(scored[2]);
  return scores;
}

std::vector<float> MockEncode(std::string_view text, size_t dim) {
  if (dim < 16) Fail(ErrorCode::kInvalidArgument, "mock encoder dimension must be >= 16");
  std::vector<double> acc(dim, 0.0);
  const std::string lowered = ToLowerAscii(text);
  size_t i = 0;
  while (i < lowered.size()) {
    const char c = lowered[i];
    if (c == ' ' || c == '_' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < lowered.size()) {
      const char d = lowered[j];
      if (d == ' ' || d == '_' || d == '\t' || d == '\n' || d == '\r' || d == '\f' ||
          d == '\v') {
        break;
      }
      ++j;
    }
    const std::string padded = "#" + lowered.substr(i, j - i) + "#";
    for (size_t k = 0; k + 3 <= padded.size(); ++k) {
      const uint64_t hash = Fnv1a64(std::string_view(padded).substr(k, 3));
      const size_t bucket = static_cast<size_t>(hash % dim);
      const bool negative = ((hash / dim) & 1ULL) != 0;
      acc[bucket] += negative ? -1.0 : 1.0;
    }
    i = j;
  }
  double sum = 0.0;
  for (double x : acc) sum += x * x;
  std::vector<float> out(dim, 0.0f);
  if (sum == 0.0) {
    out[0] = 1.0f;
    return out;
  }
  const double norm = std::sqrt(sum);
  for (size_t d = 0; d < dim; ++d) out[d] = static_cast<float>(acc[d] / norm);
  return out;
}

MockEncoder::MockEncoder(size_t dim) : dim_(dim) {
  if (dim < 16) Fail(ErrorCode::kInvalidArgument, "mock encoder dimension must be >= 16");
}

std::vector<float> MockEncoder::Encode(std::string_view text) const {
  return MockEncode(text, dim_);
}

LookupEncoder::LookupEncoder(const std::filesystem::path& texts_path,
                             const std::filesystem::path& embeddings_path)
    : matrix_(LoadEmbeddings(embeddings_path)) {
  std::ifstream in(texts_path);
  if (!in) Fail(ErrorCode::kIo, "cannot open texts file '" + texts_path.string() + "'");
  std::string line;
  size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    index_.try_emplace(line, row);
    ++row;
  }
  if (row != matrix_.rows()) {
    Fail(ErrorCode::kAlignment, "texts file '" + texts_path.string() + "' has " +
                                    std::to_string(row) + " lines but '" +
                                    embeddings_path.string() + "' has " +
                                    std::to_string(matrix_.rows()) + " rows");
  }
}

std::vector<float> LookupEncoder::Encode(std::string_view text) const {
  auto it = index_.find(std::string(text));
  if (it == index_.end()) {
    Fail(ErrorCode::kNotFound, "no precomputed embedding for text '" + std::string(text) +
                                   "'; add it to the texts file and re-run the encoder");
  }
  const auto r = matrix_.row(it->second);
  return {r.begin(), r.end()};
}

EmbeddingMatrix EncodeAll(const TextEncoder& encoder, std::span<const std::string> texts) {
  return EncodeRows(encoder, texts.size(), [&](size_t i) { return texts[i]; });
}

EmbeddingMatrix EncodeRows(const TextEncoder& encoder, size_t count,
                           const std::function<std::string(size_t)>& text_of) {
  const size_t dim = encoder.dim();
  std::vector<float> data(count * dim);
  for (size_t i = 0; i < count; ++i) {
    const auto v = encoder.Encode(text_of(i));
    std::copy(v.begin(), v.end(), data.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  return EmbeddingMatrix(count, dim, std::move(data));
}

}  // namespace cckg
