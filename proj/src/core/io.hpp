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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace cckg {

// Writes to a sibling temp file and renames it over the destination on
// Commit(). An uncommitted writer removes its temp file on destruction, so
// a failed command never leaves a half-written output behind.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path destination,
                            bool binary = false);
  ~AtomicFileWriter();

  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  std::ostream& stream() { return out_; }
  void Commit();

 private:
  std::filesystem::path destination_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view content);

std::string ReadFile(const std::filesystem::path& path);

// FNV-1a 64-bit.
uint64_t Fnv1a64(std::string_view bytes,
                 uint64_t seed = 0xcbf29ce484222325ULL);
uint64_t Fnv1a64File(const std::filesystem::path& path);

std::string ToHex(uint64_t value);

}  // namespace cckg
