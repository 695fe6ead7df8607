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

#include <gtest/gtest.h>

#include <sstream>

#include "core/error.hpp"
#include "core/kg_store.hpp"
#include "core/verbalizer.hpp"
#include "test_support.hpp"

namespace cckg {
namespace {

using testing::TempDir;
using testing::WriteText;

std::filesystem::path TemplateFile(const std::string& family, const std::string& style) {
  return std::filesystem::path(CCKG_TEST_DATA_DIR) / "templates" / (family + "_" + style + ".tsv");
}

TEST(Verbalize, NaturalTemplates) {
  const auto tpl = TemplateSet::Load(TemplateFile("conceptnet", "natural"));
  EXPECT_EQ(tpl.Render("plastic_surgery", "Causes", "looking_better"),
            "plastic surgery causes looking better");
  EXPECT_EQ(tpl.Render("A", "ReceivesAction", "B"), "B can be done to A");
  EXPECT_EQ(tpl.Render("humans", "Desires", "freedom"), "humans desires freedom");
}

TEST(Verbalize, EveryShippedFileParses) {
  for (const char* family : {"conceptnet", "explaknow"}) {
    for (const char* style : {"natural", "static"}) {
      const auto tpl = TemplateSet::Load(TemplateFile(family, style));
      EXPECT_GT(tpl.size(), 10u) << family << " " << style;
    }
  }
}

TEST(Verbalize, MissingTemplateNamesRelation) {
  std::istringstream in("IsA\t{head} is a {tail}\t0\n");
  const auto tpl = TemplateSet::Parse(in, "inline");
  try {
    tpl.Render("a", "Frobnicates", "b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
    EXPECT_NE(std::string(e.what()).find("Frobnicates"), std::string::npos);
  }
}

TEST(Verbalize, InvertedFlagMustMatchSlotOrder) {
  std::istringstream bad("ReceivesAction\t{head} can be done to {tail}\t1\n");
  EXPECT_THROW(TemplateSet::Parse(bad, "inline"), Error);
  std::istringstream dup("IsA\t{head} is a {tail}\t0\nIsA\t{head} is {tail}\t0\n");
  EXPECT_THROW(TemplateSet::Parse(dup, "inline"), Error);
}

TEST(Verbalize, MergeKeepsFirst) {
  std::istringstream a("IsA\t{head} is a {tail}\t0\n");
  std::istringstream b("IsA\t{head} is {tail}\t0\nPartOf\t{head} is part of {tail}\t0\n");
  auto first = TemplateSet::Parse(a, "a");
  first.Merge(TemplateSet::Parse(b, "b"));
  EXPECT_EQ(first.size(), 2u);
  EXPECT_EQ(first.Render("x", "IsA", "y"), "x is a y");
}

TEST(VerbalizeAll, WritesOneLinePerTripletInIdOrder) {
  TempDir dir;
  WriteText(dir / "kg.tsv", "plastic surgery\tCauses\tlooking better\nsurgery\tReceivesAction\tplanned\n");
  const auto kg = LoadKg(dir / "kg.tsv");
  const auto tpl = TemplateSet::Load(TemplateFile("conceptnet", "natural"));
  EXPECT_EQ(VerbalizeAll(kg, tpl, dir / "out.txt"), 2u);
  EXPECT_EQ(testing::ReadText(dir / "out.txt"),
            "plastic surgery causes looking better\nplanned can be done to surgery\n");
}

TEST(VerbalizeAll, UntemplatedRelationFailsBeforeOutput) {
  TempDir dir;
  WriteText(dir / "kg.tsv", "a\tIsA\tb\nb\tNoSuchRelation\tc\n");
  const auto kg = LoadKg(dir / "kg.tsv");
  const auto tpl = TemplateSet::Load(TemplateFile("conceptnet", "natural"));
  EXPECT_THROW(VerbalizeAll(kg, tpl, dir / "out.txt"), Error);
  EXPECT_FALSE(std::filesystem::exists(dir / "out.txt"));
}

TEST(VerbalizeAll, EmptyKgIsAnError) {
  TempDir dir;
  const KnowledgeGraph empty;
  const auto tpl = TemplateSet::Load(TemplateFile("conceptnet", "natural"));
  EXPECT_THROW(VerbalizeAll(empty, tpl, dir / "out.txt"), Error);
}

}  // namespace
}  // namespace cckg
