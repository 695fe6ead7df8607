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
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/kg_store.hpp"

namespace cckg {

enum class TemplateStyle { kNatural, kStatic };

std::string_view ToString(TemplateStyle style);
TemplateStyle ParseTemplateStyle(std::string_view name);

struct RelationTemplate {
  std::string pattern;  // contains "{head}" and "{tail}"
  bool inverted = false;
};

// Relation name -> sentence template. Loaded from a TSV with rows
// `relation<TAB>template<TAB>inverted_flag`.
class TemplateSet {
 public:
  static TemplateSet Load(const std::filesystem::path& path);
  static TemplateSet Parse(std::istream& in, const std::string& source_name);

  // Adds every relation of `other` not already present here.
  void Merge(const TemplateSet& other);

  const RelationTemplate* find(std::string_view relation) const;
  bool contains(std::string_view relation) const {
    return find(relation) != nullptr;
  }
  size_t size() const { return templates_.size(); }

  // Throws kNotFound naming the relation if no template exists.
  std::string Render(std::string_view head_label, std::string_view relation,
                     std::string_view tail_label) const;

 private:
  std::map<std::string, RelationTemplate, std::less<>> templates_;
};

std::string Verbalize(const KnowledgeGraph& kg, TripletId id,
                      const TemplateSet& templates);

// Writes one sentence per line in triplet-id order and returns the number
// of lines. Every relation is checked before the file is created.
size_t VerbalizeAll(const KnowledgeGraph& kg, const TemplateSet& templates,
                    const std::filesystem::path& out_path);

// Concept labels as embeddable text, one per line in concept-id order.
size_t WriteConceptTexts(const KnowledgeGraph& kg,
                         const std::filesystem::path& out_path);

}  // namespace cckg
