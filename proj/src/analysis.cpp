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

#include "viraldyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "viraldyn/csv.hpp"
#include "viraldyn/error.hpp"

namespace viraldyn {

namespace {

std::size_t window_start(const Trajectory& traj, double fraction) {
  const double t0 = traj.end_time() - fraction * (traj.end_time() - traj.start_time());
  const auto& ts = traj.times();
  return static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t0) - ts.begin());
}

double relative_distance(const State& x, const State& e) {
  State diff{x.t_cells - e.t_cells, x.i_cells - e.i_cells, x.virions - e.virions};
  const double scale = max_norm(e);
  return max_norm(diff) / (scale > 0.0 ? scale : 1.0);
}

Peak refine(double t0, double y0, double t1, double y1, double t2, double y2) {
  const double hl = t1 - t0;
  const double hr = t2 - t1;
  const double dl = (y1 - y0) / hl;
  const double dr = (y2 - y1) / hr;
  const double gamma = (dr - dl) / (hl + hr);
  if (!(gamma < 0.0))
    return {t1, y1};
  const double beta = dl + gamma * hl;
  const double u = std::clamp(-beta / (2.0 * gamma), -hl, hr);
  return {t1 + u, y1 + beta * u + gamma * u * u};
}

void check_settings(const DetectionSettings& s) {
  if (!(s.settle_tol > 0.0) || !(s.window_fraction > 0.0 && s.window_fraction <= 1.0) ||
      !(s.amplitude_ratio_lo > 0.0 && s.amplitude_ratio_lo <= s.amplitude_ratio_hi) ||
      !(s.spacing_cv_max > 0.0) || s.min_peaks < 3 || !(s.peak_floor >= 0.0))
    throw ContractViolation("detect_outcome: settings out of range");
}

} // namespace

std::string to_string(Outcome o) {
  switch (o) {
  case Outcome::ConvergedTo:
    return "ConvergedTo";
  case Outcome::SustainedOscillation:
    return "SustainedOscillation";
  case Outcome::Undecided:
    return "Undecided";
  }
  return "Undecided";
}

std::string to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::Pass:
    return "pass";
  case CheckStatus::Fail:
    return "fail";
  case CheckStatus::Inapplicable:
    return "inapplicable";
  }
  return "inapplicable";
}

std::vector<Peak> find_peaks(const std::vector<double>& times, const std::vector<double>& values,
                             double floor) {
  if (times.size() != values.size())
    throw ContractViolation("find_peaks: size mismatch");
  std::vector<Peak> peaks;
  if (values.size() < 3)
    return peaks;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0))
    return peaks;
  const double threshold = floor * range;
  double trough = values.front();
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    trough = std::min(trough, values[i]);
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) {
      if (values[i] - trough < threshold)
        continue;
      peaks.push_back(refine(times[i - 1], values[i - 1], times[i], values[i], times[i + 1],
                             values[i + 1]));
      trough = values[i];
    }
  }
  return peaks;
}

TrajectoryVerdict detect_outcome(const Trajectory& traj, const std::vector<Equilibrium>& candidates,
                                 const DetectionSettings& settings) {
  if (traj.empty())
    throw ContractViolation("detect_outcome: empty trajectory");
  check_settings(settings);

  TrajectoryVerdict verdict;
  verdict.settings = settings;
  verdict.transient_fraction = 1.0 - settings.window_fraction;
  const std::size_t start = window_start(traj, settings.window_fraction);
  const auto& xs = traj.states();
  const auto& ts = traj.times();

  verdict.max_deviation = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double dev = 0.0;
    for (std::size_t k = start; k < xs.size(); ++k)
      dev = std::max(dev, relative_distance(xs[k], candidates[c].state));
    if (dev < verdict.max_deviation) {
      verdict.max_deviation = dev;
      verdict.candidate_index = c;
    }
  }
  if (verdict.candidate_index && verdict.max_deviation < settings.settle_tol) {
    verdict.outcome = Outcome::ConvergedTo;
    verdict.equilibrium = candidates[*verdict.candidate_index];
    return verdict;
  }
  verdict.candidate_index.reset();

  std::vector<double> wt(ts.begin() + static_cast<std::ptrdiff_t>(start), ts.end());
  std::vector<double> wv;
  wv.reserve(wt.size());
  State lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
  State hi{-lo.t_cells, -lo.t_cells, -lo.t_cells};
  for (std::size_t k = start; k < xs.size(); ++k) {
    wv.push_back(xs[k].virions);
    for (int c = 0; c < 3; ++c) {
      lo[c] = std::min(lo[c], xs[k][c]);
      hi[c] = std::max(hi[c], xs[k][c]);
    }
  }
  verdict.peaks = find_peaks(wt, wv, settings.peak_floor);
  const auto& peaks = verdict.peaks;
  if (peaks.size() < settings.min_peaks) {
    verdict.note = "fewer than " + std::to_string(settings.min_peaks) +
                   " V peaks in the window; window too short or no sustained oscillation";
    return verdict;
  }

  // Peak-to-trough amplitude after each peak, trough = min of V up to the next peak.
  std::vector<double> amps;
  std::size_t k = 0;
  for (std::size_t j = 0; j + 1 < peaks.size(); ++j) {
    while (k < wt.size() && wt[k] < peaks[j].t)
      ++k;
    double trough = std::numeric_limits<double>::infinity();
    for (std::size_t m = k; m < wt.size() && wt[m] <= peaks[j + 1].t; ++m)
      trough = std::min(trough, wv[m]);
    amps.push_back(peaks[j].value - trough);
  }
  bool ratios_ok = true;
  for (std::size_t j = 1; j < amps.size(); ++j) {
    const double ratio = amps[j - 1] > 0.0 ? amps[j] / amps[j - 1] : 0.0;
    verdict.amplitude_ratios.push_back(ratio);
    ratios_ok = ratios_ok && ratio >= settings.amplitude_ratio_lo &&
                ratio <= settings.amplitude_ratio_hi;
  }

  std::vector<double> spacing;
  for (std::size_t j = 1; j < peaks.size(); ++j)
    spacing.push_back(peaks[j].t - peaks[j - 1].t);
  const double mean =
      std::accumulate(spacing.begin(), spacing.end(), 0.0) / static_cast<double>(spacing.size());
  double var = 0.0;
  for (double s : spacing)
    var += (s - mean) * (s - mean);
  var /= static_cast<double>(spacing.size());
  verdict.spacing_cv = std::sqrt(var) / mean;

  if (!ratios_ok) {
    verdict.note = "successive amplitude ratios leave the accepted band";
    return verdict;
  }
  if (!(verdict.spacing_cv < settings.spacing_cv_max)) {
    verdict.note = "peak spacing is irregular";
    return verdict;
  }
  const double window = wt.back() - wt.front();
  if (window < settings.min_periods * mean) {
    verdict.note = "window spans fewer than " + std::to_string(settings.min_periods) + " periods";
    return verdict;
  }
  verdict.outcome = Outcome::SustainedOscillation;
  verdict.period = mean;
  for (int c = 0; c < 3; ++c)
    verdict.amplitude[c] = 0.5 * (hi[c] - lo[c]);
  return verdict;
}

PermanenceBounds permanence_bounds(const ModelParams& pr) {
  PermanenceBounds b;
  b.t_upper = infection_free_t0(pr);
  b.w_upper = (pr.a * pr.t_max / 2.0 + pr.s) / pr.d;
  b.i_upper = b.w_upper;
  b.v_upper = pr.p * b.i_upper / pr.c;
  if (pr.alpha > 0.0) {
    const double k = pr.a - pr.d - pr.b / pr.alpha - pr.a * b.i_upper / pr.t_max;
    const double root = std::sqrt(k * k + 4.0 * pr.a * pr.s / pr.t_max);
    b.t_lower = k >= 0.0 ? pr.t_max / (2.0 * pr.a) * (k + root) : 2.0 * pr.s / (root - k);
  }
  return b;
}

bool PermanenceCheck::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const BoundCheck& c) { return c.status == CheckStatus::Fail; });
}

PermanenceCheck check_permanence(const Trajectory& traj, const PermanenceBounds& bounds,
                                 double slack, double window_fraction) {
  PermanenceCheck out;
  if (traj.empty())
    return out;
  const std::size_t start = window_start(traj, window_fraction);
  State lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
  State hi{-lo.t_cells, -lo.t_cells, -lo.t_cells};
  for (std::size_t k = start; k < traj.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      lo[c] = std::min(lo[c], traj.states()[k][c]);
      hi[c] = std::max(hi[c], traj.states()[k][c]);
    }
  }
  const bool endemic = r0(traj.params()) > 1.0;

  auto upper = [&](std::string name, double observed, double bound) {
    const double margin = (bound * (1.0 + slack) - observed) / bound;
    out.checks.push_back(
        {std::move(name), observed, bound, margin, margin >= 0.0 ? CheckStatus::Pass : CheckStatus::Fail});
  };
  auto lower = [&](std::string name, double observed, double bound, bool applicable) {
    BoundCheck c{std::move(name), observed, bound, 0.0, CheckStatus::Inapplicable};
    if (applicable) {
      c.margin = bound > 0.0 ? (observed - bound * (1.0 - slack)) / bound : observed;
      c.status = (bound > 0.0 ? c.margin >= 0.0 : observed > 0.0) ? CheckStatus::Pass
                                                                 : CheckStatus::Fail;
    }
    out.checks.push_back(std::move(c));
  };

  upper("T_upper", hi.t_cells, bounds.t_upper);
  upper("W_upper", w_limsup(traj, window_fraction), bounds.w_upper);
  upper("I_upper", hi.i_cells, bounds.i_upper);
  upper("V_upper", hi.virions, bounds.v_upper);
  if (bounds.t_lower)
    lower("T_lower", lo.t_cells, *bounds.t_lower, endemic);
  lower("T_positive", lo.t_cells, 0.0, endemic);
  lower("I_positive", lo.i_cells, 0.0, endemic);
  lower("V_positive", lo.virions, 0.0, endemic);
  return out;
}

double w_limsup(const Trajectory& traj, double window_fraction) {
  if (traj.empty())
    throw ContractViolation("w_limsup: empty trajectory");
  const double tau = traj.params().tau;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = window_start(traj, window_fraction); k < traj.size(); ++k) {
    const double t = traj.times()[k];
    best = std::max(best, dense_eval(traj, t - tau).t_cells + traj.states()[k].i_cells);
  }
  return best;
}

std::string peaks_csv(const std::vector<Peak>& peaks) {
  csv::Table table;
  table.header = {"t_peak", "V_peak"};
  for (const Peak& p : peaks)
    table.rows.push_back({csv::format_double(p.t), csv::format_double(p.value)});
  return csv::serialize(table);
}

} // namespace viraldyn
