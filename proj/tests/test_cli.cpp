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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path kData = CCKG_TEST_DATA_DIR;

int RunCli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(CCKG_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// File name -> contents for every regular file under `dir`.
std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = cckg::testing::ReadText(e.path());
  }
  return out;
}

class CliDemo : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto kg = (kData / "demo" / "kg.tsv").string();
    ASSERT_EQ(RunCli("verbalize --kg " + kg + " --templates conceptnet --out " + P("triplets.txt"), Log()), 0)
        << cckg::testing::ReadText(log_);
    ASSERT_EQ(RunCli("embed --in " + P("triplets.txt") + " --out " + P("triplets.emb") + " --dim 64", Log()), 0)
        << cckg::testing::ReadText(log_);
  }

  std::string P(const std::string& name) const { return (dir_.path() / name).string(); }
  const fs::path& Log() {
    log_ = dir_.path() / "log.txt";
    return log_;
  }

  // extract -> prune -> features into `<tag>/`.
  void Pipeline(const std::string& tag, int jobs) {
    const auto kg = (kData / "demo" / "kg.tsv").string();
    const auto q = (kData / "demo" / "queries.jsonl").string();
    const std::string j = " --jobs " + std::to_string(jobs);
    ASSERT_EQ(RunCli("extract --kg " + kg + " --embeddings " + P("triplets.emb") + " --queries " + q + " --out " +
                      P(tag + "/cckg") + j,
                  Log()),
              0)
        << cckg::testing::ReadText(log_);
    ASSERT_EQ(RunCli("prune --in " + P(tag + "/cckg") + " --dim 64 --out " + P(tag + "/pruned") + j, Log()), 0)
        << cckg::testing::ReadText(log_);
    ASSERT_EQ(RunCli("features --in " + P(tag + "/pruned") + " --dim 64 --out " + P(tag + "/features") + j, Log()),
              0)
        << cckg::testing::ReadText(log_);
  }

  cckg::testing::TempDir dir_;
  fs::path log_;
};

TEST_F(CliDemo, PipelineIsByteIdenticalAcrossRunsAndJobs) {
  Pipeline("a", 1);
  Pipeline("b", 1);
  Pipeline("c", 4);
  const auto a = Snapshot(dir_.path() / "a");
  EXPECT_TRUE(a.count("cckg/arg1.json"));
  EXPECT_TRUE(a.count("cckg/manifest.json"));
  EXPECT_TRUE(a.count("features/features.csv"));
  for (const auto& other : {Snapshot(dir_.path() / "b"), Snapshot(dir_.path() / "c")}) {
    ASSERT_EQ(other.size(), a.size());
    for (const auto& [name, text] : a) {
      if (name.find("manifest") != std::string::npos) continue;  // records per-run input paths
      EXPECT_EQ(other.at(name), text) << name;
    }
  }
  const auto csv = a.at("features/features.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST_F(CliDemo, EvalOfGoldAgainstGoldIsPerfect) {
  const auto gold = (kData / "demo" / "gold").string();
  ASSERT_EQ(RunCli("eval --pred " + gold + " --gold " + gold + " --templates conceptnet --out " + P("eval"), Log()), 0)
      << cckg::testing::ReadText(log_);
  const auto csv = cckg::testing::ReadText(dir_.path() / "eval" / "report.csv");
  EXPECT_NE(csv.find("macro,"), std::string::npos);
  const auto table = cckg::testing::ReadText(dir_.path() / "eval" / "report.txt");
  EXPECT_NE(table.find("100.00"), std::string::npos);
  EXPECT_NE(table.find("instances: 3"), std::string::npos);
}

TEST_F(CliDemo, AlignmentMismatchExitsNonzero) {
  cckg::testing::WriteText(dir_.path() / "short.txt", "one\ntwo\n");
  ASSERT_EQ(RunCli("embed --in " + P("short.txt") + " --out " + P("short.emb") + " --dim 64", Log()), 0);
  const auto kg = (kData / "demo" / "kg.tsv").string();
  const auto q = (kData / "demo" / "queries.jsonl").string();
  EXPECT_EQ(RunCli("extract --kg " + kg + " --embeddings " + P("short.emb") + " --queries " + q + " --out " + P("bad"),
                Log()),
            1);
  EXPECT_NE(cckg::testing::ReadText(log_).find("error:"), std::string::npos);
}

TEST_F(CliDemo, UnknownArgumentsAndMissingFilesFail) {
  EXPECT_NE(RunCli("extract --bogus", Log()), 0);
  EXPECT_EQ(RunCli("prune --in " + P("missing") + " --out " + P("x"), Log()), 1);
}

}  // namespace
