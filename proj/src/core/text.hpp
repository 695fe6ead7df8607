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

#include <string>
#include <string_view>
#include <vector>

namespace cckg {

// Canonical concept label: ASCII-lowercased, surrounding whitespace
// stripped, each internal whitespace run replaced by one underscore.
std::string NormalizeLabel(std::string_view raw);

// Inverse rendering used for embedding: underscores become spaces.
std::string LabelToText(std::string_view label);

std::string_view Trim(std::string_view s);
std::string ToLowerAscii(std::string_view s);
std::vector<std::string_view> SplitTabs(std::string_view line);

}  // namespace cckg
