/*
 * Copyright 2026 The pdstree Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PDSTREE_TEXT_H_
#define PDSTREE_TEXT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdstree {

// Shortest decimal string that parses back to exactly `value`.
std::string FormatReal(double value);

std::optional<double> ParseReal(std::string_view text);
std::optional<int64_t> ParseInt(std::string_view text);

std::vector<std::string_view> SplitString(std::string_view text, char sep);
std::string_view Trim(std::string_view text);

// Joins `FormatReal`/integer renderings with `sep`.
template <typename T>
std::string JoinNumbers(const std::vector<T>& values, char sep);

}  // namespace pdstree

#endif  // PDSTREE_TEXT_H_
