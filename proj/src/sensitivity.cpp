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

#include "viraldyn/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "viraldyn/csv.hpp"
#include "viraldyn/error.hpp"

namespace viraldyn {

std::string to_string(SensitivityMethod m) {
  return m == SensitivityMethod::Analytic ? "analytic" : "central_difference";
}

double sensitivity_index(const ModelParams& params, Param which, SensitivityMethod method,
                         double rel_step) {
  validate(params);
  if (!(rel_step > 0.0 && rel_step < 0.5))
    throw ContractViolation("sensitivity_index: rel_step must lie in (0, 0.5)");
  const double base = r0(params);
  if (base == 0.0)
    throw NumericalFailure("sensitivity index undefined: R0 is zero");
  const double psi = get_param(params, which);

  if (method == SensitivityMethod::Analytic) {
    // The viral term b p T0 / (c mu) is linear in b and p and inverse in c.
    const double viral = params.b * params.p * infection_free_t0(params) / (params.c * params.mu);
    switch (which) {
    case Param::mu:
      return -1.0;
    case Param::b:
    case Param::p:
      return viral / base;
    case Param::c:
      return -viral / base;
    default:
      throw ContractViolation("no analytic index for " + std::string(param_name(which)));
    }
  }

  if (psi == 0.0)
    return 0.0;
  ModelParams up = params;
  ModelParams down = params;
  set_param(up, which, psi * (1.0 + rel_step));
  set_param(down, which, psi * (1.0 - rel_step));
  return (r0(up) - r0(down)) / (2.0 * rel_step * base);
}

double SensitivityReport::index(Param which) const {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [which](const SensitivityEntry& e) { return e.which == which; });
  if (it == entries.end())
    throw ContractViolation("sensitivity report has no entry for parameter " +
                            std::to_string(static_cast<int>(which)));
  return it->index;
}

SensitivityReport full_report(const ModelParams& params, double rel_step) {
  SensitivityReport report;
  report.baseline = params;
  report.rel_step = rel_step;
  for (Param which : kAllParams)
    report.entries.push_back(
        {which, sensitivity_index(params, which, SensitivityMethod::CentralDifference, rel_step),
         SensitivityMethod::CentralDifference});
  std::sort(report.entries.begin(), report.entries.end(),
            [](const SensitivityEntry& x, const SensitivityEntry& y) {
              return param_name(x.which) < param_name(y.which);
            });
  return report;
}

std::string sensitivity_csv(const SensitivityReport& report) {
  csv::Table table;
  table.header = {"parameter", "index", "method"};
  for (const auto& e : report.entries)
    table.rows.push_back(
        {std::string(param_name(e.which)), csv::format_double(e.index), to_string(e.method)});
  return csv::serialize(table);
}

} // namespace viraldyn
