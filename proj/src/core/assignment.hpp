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
#include <cstdint>
#include <vector>

namespace cckg {

struct Assignment {
  std::vector<int64_t> row_to_col;  // -1 for unassigned rows
  double total = 0.0;
};

// Maximum-total one-to-one assignment on a rectangular score matrix
// (rows x cols, row-major). min(rows, cols) pairs are matched.
Assignment MaxAssignment(const std::vector<std::vector<double>>& scores);

// Greedy reference: repeatedly takes the largest remaining entry.
Assignment GreedyAssignment(const std::vector<std::vector<double>>& scores);

}  // namespace cckg
