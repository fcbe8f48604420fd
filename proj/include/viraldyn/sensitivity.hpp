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
#include <vector>

#include "viraldyn/model.hpp"

namespace viraldyn {

enum class SensitivityMethod { CentralDifference, Analytic };
std::string to_string(SensitivityMethod m);

inline constexpr double kSensitivityStep = 1e-6;

/// Normalized index (Psi / R0) dR0/dPsi.
///
/// CentralDifference evaluates r0 at Psi(1 +- rel_step). Analytic exists
/// only for mu, b, p and c, where T0 does not depend on the parameter, and
/// throws ContractViolation for the others. The index is 0 when Psi is 0.
/// Throws NumericalFailure when R0 == 0.
double sensitivity_index(const ModelParams& params, Param which,
                         SensitivityMethod method = SensitivityMethod::CentralDifference,
                         double rel_step = kSensitivityStep);

struct SensitivityEntry {
  Param which = Param::a;
  double index = 0.0;
  SensitivityMethod method = SensitivityMethod::CentralDifference;
};

struct SensitivityReport {
  ModelParams baseline;
  double rel_step = kSensitivityStep;
  std::vector<SensitivityEntry> entries;  ///< alphabetical by parameter name
  double index(Param which) const;
};

/// Central-difference indices for all ten parameters.
SensitivityReport full_report(const ModelParams& params, double rel_step = kSensitivityStep);

/// `parameter,index,method`, one row per entry.
std::string sensitivity_csv(const SensitivityReport& report);

} // namespace viraldyn
