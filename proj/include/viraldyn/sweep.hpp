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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "viraldyn/analysis.hpp"
#include "viraldyn/linearization.hpp"

namespace viraldyn {

/// Constant initial history used when the caller gives none: E2 scaled by
/// 1.1 when E2 exists, otherwise E1 + (0, 1e-3 T0, 1e-3 T0).
State default_history(const ModelParams& params);

/// Analytic stability and simulated outcome for one parameter set.
struct PointResult {
  std::optional<Equilibrium> infected;
  StabilityReport report;   ///< of E2 when it exists, else of E1
  TrajectoryVerdict verdict;
  State history{};
  /// "agree", "disagree" or "undecided".
  std::string agreement;
};

PointResult run_point(const ModelParams& params, double t_end, double step,
                      const std::optional<State>& history, const DetectionSettings& settings);

enum class SweepAxis { tau, c, alpha };
std::string to_string(SweepAxis axis);
/// Throws InvalidInput for anything but tau, c, alpha.
SweepAxis sweep_axis_from_name(const std::string& name);

struct SweepConfig {
  ModelParams base;
  SweepAxis axis = SweepAxis::tau;
  std::vector<double> grid;  ///< nonempty, strictly increasing
  double t_end = 1000.0;
  double step = 0.0;         ///< 0 selects default_step per point
  std::optional<State> history;
  DetectionSettings settings;
  /// Upper bound on worker threads; 0 uses VIRALDYN_THREADS or the
  /// hardware concurrency.
  std::size_t max_workers = 0;
};

struct SweepRow {
  double value = 0.0;
  std::optional<PointResult> result;
  std::string error;  ///< set when the point failed; the sweep carries on
};

/// Worker count for a sweep of `points` points given a caller cap.
std::size_t sweep_workers(std::size_t points, std::size_t cap);

/// Rows come back in grid order whatever the completion order.
/// Throws ContractViolation for an empty or unsorted grid.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// `value,classification,verdict,period,agreement,error`.
std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace viraldyn
