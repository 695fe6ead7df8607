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

#include "core/io.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <system_error>

#include "core/error.hpp"

namespace cckg {
namespace {

std::filesystem::path TempPathFor(const std::filesystem::path& destination) {
  static std::atomic<uint64_t> counter{0};
  auto name = destination.filename().string();
  name = "." + name + ".tmp" + std::to_string(counter.fetch_add(1));
  return destination.parent_path() / name;
}

}  // namespace

AtomicFileWriter::AtomicFileWriter(std::filesystem::path destination,
                                   bool binary)
    : destination_(std::move(destination)), temp_(TempPathFor(destination_)) {
  auto mode = std::ios::out | std::ios::trunc;
  if (binary) mode |= std::ios::binary;
  out_.open(temp_, mode);
  if (!out_) {
    Fail(ErrorCode::kIo, "cannot open '" + temp_.string() + "' for writing");
  }
}

AtomicFileWriter::~AtomicFileWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ignored;
    std::filesystem::remove(temp_, ignored);
  }
}

void AtomicFileWriter::Commit() {
  out_.flush();
  if (!out_) {
    Fail(ErrorCode::kIo, "write failed for '" + destination_.string() + "'");
  }
  out_.close();
  std::error_code ec;
  std::filesystem::rename(temp_, destination_, ec);
  if (ec) {
    Fail(ErrorCode::kIo, "cannot rename '" + temp_.string() + "' to '" +
                             destination_.string() + "': " + ec.message());
  }
  committed_ = true;
}

void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view content) {
  AtomicFileWriter writer(path, /*binary=*/true);
  writer.stream().write(content.data(),
                        static_cast<std::streamsize>(content.size()));
  writer.Commit();
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::string content;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  content.resize(static_cast<size_t>(size));
  in.read(content.data(), size);
  if (!in) Fail(ErrorCode::kIo, "read failed for '" + path.string() + "'");
  return content;
}

uint64_t Fnv1a64(std::string_view bytes, uint64_t seed) {
  uint64_t hash = seed;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t Fnv1a64File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::array<char, 1 << 16> buffer;
  uint64_t hash = 0xcbf29ce484222325ULL;
  while (in) {
    in.read(buffer.data(), buffer.size());
    hash = Fnv1a64(std::string_view(buffer.data(),
                                    static_cast<size_t>(in.gcount())),
                   hash);
  }
  return hash;
}

std::string ToHex(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace cckg
