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

#include <optional>
#include <string>
#include <vector>

#include "viraldyn/dde.hpp"
#include "viraldyn/equilibria.hpp"

namespace viraldyn {

/// Thresholds used by detect_outcome. They are reported alongside every
/// verdict so downstream readers know which rule produced it.
struct DetectionSettings {
  double settle_tol = 1e-3;         ///< relative max-norm distance for convergence
  double window_fraction = 0.5;     ///< trailing share of [0, t_end] analysed
  double amplitude_ratio_lo = 0.95;
  double amplitude_ratio_hi = 1.05;
  double spacing_cv_max = 0.05;
  std::size_t min_peaks = 4;
  double min_periods = 5.0;         ///< window must hold this many periods
  double peak_floor = 1e-6;         ///< prominence floor, relative to the V range
};

enum class Outcome { ConvergedTo, SustainedOscillation, Undecided };
std::string to_string(Outcome o);

struct Peak {
  double t = 0.0;
  double value = 0.0;
};

struct TrajectoryVerdict {
  Outcome outcome = Outcome::Undecided;
  /// ConvergedTo: index into the candidate list, the candidate and the
  /// max relative distance over the window.
  std::optional<std::size_t> candidate_index;
  std::optional<Equilibrium> equilibrium;
  double max_deviation = 0.0;  ///< to the nearest candidate; +inf if none given
  /// SustainedOscillation: mean peak spacing and (max - min)/2 per component.
  double period = 0.0;
  State amplitude{};
  double transient_fraction = 0.5;
  std::vector<Peak> peaks;                 ///< V peaks inside the window
  std::vector<double> amplitude_ratios;    ///< successive peak-to-trough ratios
  double spacing_cv = 0.0;
  std::string note;
  DetectionSettings settings;
};

/// Strict-left, weak-right local maxima on the sample grid, refined by the
/// vertex of the parabola through the three neighbouring samples. Peaks with
/// prominence (height above the lowest sample since the previous kept peak)
/// below floor * (max - min) are dropped.
std::vector<Peak> find_peaks(const std::vector<double>& times, const std::vector<double>& values,
                             double floor = 1e-6);

/// Convergence is tested first, then sustained oscillation of V; anything
/// else is Undecided. Throws ContractViolation for an empty trajectory or
/// settings out of range.
TrajectoryVerdict detect_outcome(const Trajectory& traj, const std::vector<Equilibrium>& candidates,
                                 const DetectionSettings& settings = {});

/// Closed-form ultimate bounds. M_I = w_upper since I <= W, and
/// M_V = p M_I / c from dV/dt = pI - cV.
struct PermanenceBounds {
  double t_upper = 0.0;
  double w_upper = 0.0;
  double i_upper = 0.0;
  double v_upper = 0.0;
  std::optional<double> t_lower;  ///< needs b / alpha, absent when alpha == 0
};

PermanenceBounds permanence_bounds(const ModelParams& params);

enum class CheckStatus { Pass, Fail, Inapplicable };
std::string to_string(CheckStatus s);

struct BoundCheck {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;  ///< signed slack, positive when satisfied
  CheckStatus status = CheckStatus::Inapplicable;
};

struct PermanenceCheck {
  std::vector<BoundCheck> checks;
  bool all_passed() const;
};

/// Window extrema against each bound with `slack` relative tolerance. Lower
/// bounds and strict positivity are only meaningful for R0 > 1 and are
/// reported Inapplicable otherwise.
PermanenceCheck check_permanence(const Trajectory& traj, const PermanenceBounds& bounds,
                                 double slack = 1e-3, double window_fraction = 0.5);

/// max over window knots of T(t - tau) + I(t).
double w_limsup(const Trajectory& traj, double window_fraction = 0.5);

/// `t_peak,V_peak`.
std::string peaks_csv(const std::vector<Peak>& peaks);

} // namespace viraldyn
