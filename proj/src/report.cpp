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

#include "viraldyn/report.hpp"

#include <cmath>

#include "json.hpp"

namespace viraldyn {

namespace {

using nlohmann::json;

json state_json(const State& x) { return json::array({x.t_cells, x.i_cells, x.virions}); }

json params_json(const ModelParams& p) {
  json out = json::object();
  for (Param which : kAllParams)
    out[std::string(param_name(which))] = get_param(p, which);
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json report_json(const StabilityReport& r) {
  json out;
  out["kind"] = r.equilibrium.kind == EquilibriumKind::Infected ? "E2" : "E1";
  out["state"] = state_json(r.equilibrium.state);
  out["residual"] = r.equilibrium.residual;
  out["tau"] = r.tau;
  out["degree"] = r.coeffs.degree;
  out["a2"] = r.coeffs.a2;
  out["a1"] = r.coeffs.a1;
  out["a0"] = r.coeffs.a0;
  out["b1"] = r.coeffs.b1;
  out["b0"] = r.coeffs.b0;
  out["routh_hurwitz_h1"] = r.routh_hurwitz_h1;
  out["A"] = r.crossing.A;
  out["B"] = r.crossing.B;
  out["C"] = r.crossing.C;
  out["positive_z_roots"] = r.crossing.positive_z_roots;
  out["omega0"] = optional_json(r.crossing.omega0);
  out["tau0"] = optional_json(r.crossing.tau0);
  out["transversality_sign"] = optional_json(r.crossing.transversality_sign);
  out["largest_root_transversality"] = optional_json(r.crossing.largest_root_transversality);
  json crossings = json::array();
  for (const Crossing& c : r.crossing.crossings)
    crossings.push_back(
        {{"z", c.z}, {"omega", c.omega}, {"tau", c.tau}, {"transversality_sign", c.transversality_sign}});
  out["crossings"] = crossings;
  out["classification"] = to_string(r.classification);
  json flags = json::array();
  for (GlobalFlag f : r.global_flags)
    flags.push_back(to_string(f));
  out["global_flags"] = flags;
  if (r.delay_length) {
    out["v_plus"] = r.delay_length->v_plus;
    out["K1"] = r.delay_length->k1;
    out["K2"] = r.delay_length->k2;
    out["K3"] = r.delay_length->k3;
    out["tau_plus"] = optional_json(r.delay_length->tau_plus);
    if (!r.delay_length->note.empty())
      out["tau_plus_note"] = r.delay_length->note;
  }
  return out;
}

} // namespace

std::string stability_json(const ModelParams& params) {
  json out;
  out["params"] = params_json(params);
  out["warnings"] = validate(params);
  out["R0"] = r0(params);
  out["T0"] = infection_free_t0(params);
  const Equilibrium e1 = solve_infection_free(params);
  out["E1"] = report_json(classify(params, e1));
  if (auto e2 = solve_infected(params))
    out["E2"] = report_json(classify(params, *e2));
  else
    out["E2"] = nullptr;
  return out.dump(2) + "\n";
}

std::string verdict_json(const Trajectory& traj, const TrajectoryVerdict& v) {
  json out;
  out["outcome"] = to_string(v.outcome);
  if (v.equilibrium) {
    out["equilibrium"] = v.equilibrium->kind == EquilibriumKind::Infected ? "E2" : "E1";
    out["equilibrium_state"] = state_json(v.equilibrium->state);
  }
  out["max_deviation"] = std::isfinite(v.max_deviation) ? json(v.max_deviation) : json(nullptr);
  if (v.outcome == Outcome::SustainedOscillation) {
    out["period"] = v.period;
    out["amplitude"] = state_json(v.amplitude);
  }
  out["peak_count"] = v.peaks.size();
  out["amplitude_ratios"] = v.amplitude_ratios;
  out["spacing_cv"] = v.spacing_cv;
  out["transient_fraction"] = v.transient_fraction;
  out["note"] = v.note;

  const DetectionSettings& s = v.settings;
  json thresholds;
  thresholds["settle_tol"] = s.settle_tol;
  thresholds["window_fraction"] = s.window_fraction;
  thresholds["amplitude_ratio_band"] = json::array({s.amplitude_ratio_lo, s.amplitude_ratio_hi});
  thresholds["spacing_cv_max"] = s.spacing_cv_max;
  thresholds["min_peaks"] = s.min_peaks;
  thresholds["min_periods"] = s.min_periods;
  thresholds["peak_floor"] = s.peak_floor;
  out["thresholds"] = thresholds;

  json run;
  run["params"] = params_json(traj.params());
  run["t_end"] = traj.end_time();
  run["step"] = traj.diagnostics().step;
  run["steps"] = traj.diagnostics().steps;
  run["clamped"] = traj.diagnostics().clamped;
  run["positivity_violations"] = traj.diagnostics().positivity_violations;
  if (traj.history().is_constant())
    run["history"] = state_json(traj.history().initial());
  else
    run["history"] = "sampled";
  out["run"] = run;
  return out.dump(2) + "\n";
}

} // namespace viraldyn
