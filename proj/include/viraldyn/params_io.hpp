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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "viraldyn/model.hpp"

namespace viraldyn {

/// Parses the flat `name = value` format (one pair per line, `#` starts a
/// comment). Keys are exactly s, d, a, t_max, b, alpha, mu, p, c, tau; tau
/// may be omitted (defaults to 0). Any other key set, or a value that does
/// not parse, throws InvalidInput; errors tied to a line carry its number.
ModelParams parse_params(std::string_view text);

/// Reads and parses a parameter file. Throws IoError when unreadable.
ModelParams load_params_file(const std::filesystem::path& path);

/// Inverse of parse_params, values round-trip exactly.
std::string format_params(const ModelParams& params);

/// Parameter sets of the published numerical experiments: fig1, fig3, fig5,
/// fig7c, fig8. Throws InvalidInput for an unknown name.
ModelParams preset(std::string_view name);
std::vector<std::string> preset_names();

} // namespace viraldyn
