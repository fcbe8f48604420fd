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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "viraldyn/model.hpp"

namespace viraldyn {

/// Initial function on [-tau, 0]: either constant or a list of samples
/// interpolated by cubic Hermite with finite-difference slopes.
class History {
public:
  static History constant(const State& x);
  /// Samples must have strictly increasing times, start at or before -tau,
  /// end exactly at 0 and be componentwise nonnegative (checked by
  /// integrate, which knows tau).
  static History sampled(std::vector<double> times, std::vector<State> states);

  bool is_constant() const noexcept { return times_.empty(); }
  State at(double t) const;
  State initial() const;
  double earliest_time() const;
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<State>& states() const noexcept { return states_; }

private:
  State constant_{};
  std::vector<double> times_;
  std::vector<State> states_;
  std::vector<State> slopes_;
};

struct IntegrationDiagnostics {
  double step = 0.0;
  std::size_t steps = 0;
  std::size_t clamped = 0;               ///< tiny negative overshoots reset to 0
  std::size_t positivity_violations = 0;  ///< components below -eps_pos (not clamped)
  double min_scaled_component = 0.0;      ///< min over samples of x_k / scale_k
};

/// Fixed-grid solution with derivative samples for Hermite dense output.
class Trajectory {
public:
  Trajectory(ModelParams params, History history, std::vector<double> times,
             std::vector<State> states, std::vector<Rates> derivatives,
             IntegrationDiagnostics diagnostics);

  const ModelParams& params() const noexcept { return params_; }
  const History& history() const noexcept { return history_; }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<State>& states() const noexcept { return states_; }
  const std::vector<Rates>& derivatives() const noexcept { return derivatives_; }
  const IntegrationDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  double start_time() const { return times_.front(); }
  double end_time() const { return times_.back(); }

private:
  ModelParams params_;
  History history_;
  std::vector<double> times_;
  std::vector<State> states_;
  std::vector<Rates> derivatives_;
  IntegrationDiagnostics diagnostics_;
};

/// Relative floor for positivity: components may dip to -kPositivityEps *
/// scale, where scale is the running max magnitude of that component.
inline constexpr double kPositivityEps = 1e-9;

/// Step used when the caller passes step <= 0.
///
/// tau > 0: tau / n with n chosen so the step is near tau/40 but inside
/// [h_cap/8, h_cap], h_cap = 0.2 / max(c, mu, a, d). tau == 0: t_end/1e5
/// capped at h_cap.
double default_step(const ModelParams& params, double t_end);

/// Method of steps with classical RK4. Lagged values at stage times come
/// from cubic Hermite interpolation of the solution (or the history for
/// t - tau < 0). For tau > 0 the step is shrunk to tau / ceil(tau / step)
/// so that delay breakpoints land on grid points.
///
/// Throws ContractViolation for t_end <= 0, step > tau (tau > 0), or a
/// history that does not cover [-tau, 0]; BlowUp on a non-finite state.
Trajectory integrate(const ModelParams& params, const History& history, double t_end,
                     double step = 0.0);

/// Cubic Hermite evaluation; exact at knots. Covers [-tau, t_end], with the
/// history answering for t < 0. Throws RangeError outside.
State dense_eval(const Trajectory& traj, double t);

/// `t,T,I,V` header, one row per knot, values round-trip exactly.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

struct TrajectorySamples {
  std::vector<double> times;
  std::vector<State> states;
};
/// Reads back the CSV written above.
TrajectorySamples parse_trajectory_csv(std::string_view text);

} // namespace viraldyn
