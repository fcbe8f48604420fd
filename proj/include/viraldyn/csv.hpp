// Copyright 2026 The viraldyn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace viraldyn::csv {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

/// Strict full-string parse; throws InvalidInput on trailing garbage.
double parse_double(std::string_view text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Plain comma-separated text without quoting (none of our fields contain
/// commas). Every row must have as many cells as the header.
Table parse(std::string_view text);
std::string serialize(const Table& table);

} // namespace viraldyn::csv
