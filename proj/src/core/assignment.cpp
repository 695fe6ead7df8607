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

#include "core/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "core/error.hpp"

namespace cckg {
namespace {

size_t CheckedColumns(const std::vector<std::vector<double>>& scores) {
  const size_t cols = scores.empty() ? 0 : scores[0].size();
  for (const auto& row : scores) {
    if (row.size() != cols) Fail(ErrorCode::kInvalidArgument, "ragged score matrix");
    for (double v : row) {
      if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "non-finite score");
    }
  }
  return cols;
}

}  // namespace

Assignment MaxAssignment(const std::vector<std::vector<double>>& scores) {
  const size_t rows = scores.size();
  const size_t cols = CheckedColumns(scores);
  Assignment result;
  result.row_to_col.assign(rows, -1);
  if (rows == 0 || cols == 0) return result;

  // Shortest augmenting path Hungarian method on the square padding of the
  // negated matrix; potentials u, v, 1-based with column 0 as sentinel.
  const size_t n = std::max(rows, cols);
  const double inf = std::numeric_limits<double>::infinity();
  auto cost = [&](size_t i, size_t j) {
    return (i < rows && j < cols) ? -scores[i][j] : 0.0;
  };
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<size_t> p(n + 1, 0), way(n + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    p[0] = i;
    size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const size_t i0 = p[j0];
      double delta = inf;
      size_t j1 = 0;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (size_t j = 1; j <= n; ++j) {
    const size_t i = p[j] - 1;
    if (i < rows && j - 1 < cols) {
      result.row_to_col[i] = static_cast<int64_t>(j - 1);
      result.total += scores[i][j - 1];
    }
  }
  return result;
}

Assignment GreedyAssignment(const std::vector<std::vector<double>>& scores) {
  const size_t rows = scores.size();
  const size_t cols = CheckedColumns(scores);
  std::vector<std::tuple<double, size_t, size_t>> entries;
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) entries.emplace_back(-scores[i][j], i, j);
  }
  std::sort(entries.begin(), entries.end());
  Assignment result;
  result.row_to_col.assign(rows, -1);
  std::vector<char> col_used(cols, 0);
  for (const auto& [neg, i, j] : entries) {
    if (result.row_to_col[i] >= 0 || col_used[j]) continue;
    result.row_to_col[i] = static_cast<int64_t>(j);
    col_used[j] = 1;
    result.total += -neg;
  }
  return result;
}

}  // namespace cckg
