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

#include "core/verbalizer.hpp"

#include <fstream>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/text.hpp"

namespace cckg {
namespace {

constexpr std::string_view kHeadSlot = "{head}";
constexpr std::string_view kTailSlot = "{tail}";

bool ParseFlag(std::string_view field, bool* value) {
  const std::string lowered = ToLowerAscii(Trim(field));
  if (lowered == "1" || lowered == "true" || lowered == "yes") {
    *value = true;
    return true;
  }
  if (lowered == "0" || lowered == "false" || lowered == "no" ||
      lowered.empty()) {
    *value = false;
    return true;
  }
  return false;
}

}  // namespace

std::string_view ToString(TemplateStyle style) {
  return style == TemplateStyle::kNatural ? "natural" : "static";
}

TemplateStyle ParseTemplateStyle(std::string_view name) {
  if (name == "natural") return TemplateStyle::kNatural;
  if (name == "static") return TemplateStyle::kStatic;
  Fail(ErrorCode::kInvalidArgument,
       "unknown template style '" + std::string(name) + "'");
}

TemplateSet TemplateSet::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open template file '" + path.string() + "'");
  return Parse(in, path.string());
}

TemplateSet TemplateSet::Parse(std::istream& in, const std::string& source_name) {
  TemplateSet set;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (Trim(view).empty() || Trim(view).front() == '#') continue;
    const auto fields = SplitTabs(view);
    const std::string where = source_name + ":" + std::to_string(line_number);
    if (fields.size() != 3) {
      Fail(ErrorCode::kFormat, where + ": expected relation, template and "
                                       "inverted flag");
    }
    RelationTemplate tpl;
    tpl.pattern = std::string(Trim(fields[1]));
    if (!ParseFlag(fields[2], &tpl.inverted)) {
      Fail(ErrorCode::kFormat, where + ": bad inverted flag '" +
                                   std::string(fields[2]) + "'");
    }
    const size_t head_at = tpl.pattern.find(kHeadSlot);
    const size_t tail_at = tpl.pattern.find(kTailSlot);
    if (head_at == std::string::npos || tail_at == std::string::npos) {
      Fail(ErrorCode::kFormat, where + ": template must contain {head} and {tail}");
    }
    if ((tail_at < head_at) != tpl.inverted) {
      Fail(ErrorCode::kFormat,
           where + ": inverted flag disagrees with slot order in template");
    }
    std::string relation(Trim(fields[0]));
    if (!set.templates_.emplace(relation, std::move(tpl)).second) {
      Fail(ErrorCode::kFormat, where + ": duplicate relation '" + relation + "'");
    }
  }
  if (set.templates_.empty()) {
    Fail(ErrorCode::kFormat, "template file '" + source_name + "' is empty");
  }
  return set;
}

void TemplateSet::Merge(const TemplateSet& other) {
  for (const auto& [relation, tpl] : other.templates_) {
    templates_.try_emplace(relation, tpl);
  }
}

const RelationTemplate* TemplateSet::find(std::string_view relation) const {
  auto it = templates_.find(relation);
  return it == templates_.end() ? nullptr : &it->second;
}

std::string TemplateSet::Render(std::string_view head_label,
                                std::string_view relation,
                                std::string_view tail_label) const {
  const RelationTemplate* tpl = find(relation);
  if (tpl == nullptr) {
    Fail(ErrorCode::kNotFound,
         "no verbalization template for relation '" + std::string(relation) + "'");
  }
  std::string out;
  out.reserve(tpl->pattern.size() + head_label.size() + tail_label.size());
  std::string_view rest = tpl->pattern;
  while (!rest.empty()) {
    if (rest.starts_with(kHeadSlot)) {
      out += LabelToText(head_label);
      rest.remove_prefix(kHeadSlot.size());
    } else if (rest.starts_with(kTailSlot)) {
      out += LabelToText(tail_label);
      rest.remove_prefix(kTailSlot.size());
    } else {
      out.push_back(rest.front());
      rest.remove_prefix(1);
    }
  }
  return out;
}

std::string Verbalize(const KnowledgeGraph& kg, TripletId id,
                      const TemplateSet& templates) {
  const Triplet& t = kg.triplet(id);
  return templates.Render(kg.concept_label(t.head),
                          kg.relation_name(t.relation),
                          kg.concept_label(t.tail));
}

size_t VerbalizeAll(const KnowledgeGraph& kg, const TemplateSet& templates,
                    const std::filesystem::path& out_path) {
  if (kg.triplet_count() == 0) {
    Fail(ErrorCode::kInvalidArgument, "knowledge graph has no triplets to verbalize");
  }
  for (RelationId r = 0; r < kg.relation_count(); ++r) {
    if (!templates.contains(kg.relation_name(r))) {
      Fail(ErrorCode::kNotFound, "no verbalization template for relation '" +
                                     kg.relation_name(r) + "'");
    }
  }
  AtomicFileWriter writer(out_path);
  auto& out = writer.stream();
  for (TripletId id = 0; id < kg.triplet_count(); ++id) {
    out << Verbalize(kg, id, templates) << '\n';
  }
  writer.Commit();
  return kg.triplet_count();
}

size_t WriteConceptTexts(const KnowledgeGraph& kg,
                         const std::filesystem::path& out_path) {
  AtomicFileWriter writer(out_path);
  for (const auto& label : kg.concept_labels()) {
    writer.stream() << LabelToText(label) << '\n';
  }
  writer.Commit();
  return kg.concept_count();
}

}  // namespace cckg
