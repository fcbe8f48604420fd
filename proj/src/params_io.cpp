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

#include "viraldyn/params_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "viraldyn/csv.hpp"
#include "viraldyn/error.hpp"

namespace viraldyn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

} // namespace

ModelParams parse_params(std::string_view text) {
  ModelParams params;
  std::array<bool, kAllParams.size()> seen{};
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos)
      throw InvalidInput(where + "expected 'name = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    Param which;
    double v;
    try {
      which = param_from_name(key);
      v = csv::parse_double(value);
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + e.what());
    }
    auto& flag = seen[static_cast<std::size_t>(which)];
    if (flag)
      throw InvalidInput(where + "duplicate key '" + std::string(key) + "'");
    flag = true;
    set_param(params, which, v);
  }
  for (Param k : kAllParams) {
    if (k != Param::tau && !seen[static_cast<std::size_t>(k)])
      throw InvalidInput("missing key '" + std::string(param_name(k)) + "'");
  }
  return params;
}

ModelParams load_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open parameter file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_params(buf.str());
}

std::string format_params(const ModelParams& params) {
  std::string out;
  for (Param k : {Param::s, Param::d, Param::a, Param::t_max, Param::b, Param::alpha,
                  Param::mu, Param::p, Param::c, Param::tau}) {
    out += param_name(k);
    out += " = ";
    out += csv::format_double(get_param(params, k));
    out += '\n';
  }
  return out;
}

ModelParams preset(std::string_view name) {
  // fig1 sits in the infection-free regime (R0 < 1).
  ModelParams fig1{.s = 8e5, .d = 4.7e-3, .a = 1.0, .t_max = 0.7e7, .b = 0.6e-7,
                   .alpha = 0.001, .mu = 0.35, .p = 5.4, .c = 5.9, .tau = 1.0};
  if (name == "fig1")
    return fig1;
  if (name == "fig3") {
    ModelParams p = fig1;
    p.mu = 0.3;
    p.a = 2.0;
    return p;
  }
  ModelParams fig5{.s = 0.01, .d = 0.02, .a = 0.95, .t_max = 1200.0, .b = 0.0027,
                   .alpha = 0.001, .mu = 1.0, .p = 10.0, .c = 2.4, .tau = 0.1};
  if (name == "fig5")
    return fig5;
  if (name == "fig7c") {
    ModelParams p = fig5;
    p.c = 5.0;
    p.tau = 4.0;
    return p;
  }
  if (name == "fig8") {
    ModelParams p = fig5;
    p.alpha = 0.005;
    p.tau = 10.0;
    return p;
  }
  throw InvalidInput("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"fig1", "fig3", "fig5", "fig7c", "fig8"}; }

} // namespace viraldyn
