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

#include "viraldyn/viraldyn.h"

#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include "json.hpp"
#include "viraldyn/analysis.hpp"
#include "viraldyn/dde.hpp"
#include "viraldyn/error.hpp"
#include "viraldyn/params_io.hpp"
#include "viraldyn/report.hpp"
#include "viraldyn/sensitivity.hpp"
#include "viraldyn/sweep.hpp"

struct vd_params_struct {
  viraldyn::ModelParams params;
};

struct vd_trajectory_struct {
  viraldyn::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guard(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const viraldyn::BlowUp& e) {
    g_last_error = e.what();
    return VD_ERROR_BLOWUP;
  } catch (const viraldyn::InvalidInput& e) {
    g_last_error = e.what();
    return VD_ERROR_INVALID_INPUT;
  } catch (const viraldyn::ContractViolation& e) {
    g_last_error = e.what();
    return VD_ERROR_CONTRACT;
  } catch (const viraldyn::RangeError& e) {
    g_last_error = e.what();
    return VD_ERROR_RANGE;
  } catch (const viraldyn::NumericalFailure& e) {
    g_last_error = e.what();
    return VD_ERROR_NUMERICAL;
  } catch (const viraldyn::IoError& e) {
    g_last_error = e.what();
    return VD_ERROR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VD_ERROR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown exception";
    return VD_ERROR_UNKNOWN;
  }
}

int null_pointer(const char* what) {
  g_last_error = std::string("null pointer: ") + what;
  return VD_ERROR_NULL_POINTER;
}

int write_text(const std::string& text, char* out, size_t* out_len) {
  if (!out_len)
    return null_pointer("out_len");
  const size_t need = text.size() + 1;
  if (!out || *out_len < need) {
    *out_len = need;
    g_last_error = "output buffer too small";
    return VD_ERROR_INSUFFICIENT_BUFFER;
  }
  std::memcpy(out, text.c_str(), need);
  *out_len = need;
  return VD_OK;
}

void copy_state(const viraldyn::State& x, double out[3]) {
  out[0] = x.t_cells;
  out[1] = x.i_cells;
  out[2] = x.virions;
}

std::optional<viraldyn::State> to_state(const double* v) {
  if (!v)
    return std::nullopt;
  return viraldyn::State{v[0], v[1], v[2]};
}

viraldyn::TrajectoryVerdict verdict_for(const viraldyn::Trajectory& traj, double settle_tol) {
  std::vector<viraldyn::Equilibrium> candidates{viraldyn::solve_infection_free(traj.params())};
  if (auto e2 = viraldyn::solve_infected(traj.params()))
    candidates.push_back(*e2);
  viraldyn::DetectionSettings settings;
  if (settle_tol > 0.0)
    settings.settle_tol = settle_tol;
  return viraldyn::detect_outcome(traj, candidates, settings);
}

template <class Init>
int init_params(vd_params_t* params, Init&& init) {
  if (!params)
    return null_pointer("params");
  *params = nullptr;
  return guard([&] {
    *params = new vd_params_struct{init()};
    return VD_OK;
  });
}

} // namespace

extern "C" {

const char* vd_version(void) { return "1.0.0"; }

const char* vd_error_description(int status) {
  switch (status) {
  case VD_OK:
    return "ok";
  case VD_NO_RESULT:
    return "no result";
  case VD_ERROR_INVALID_INPUT:
    return "invalid input";
  case VD_ERROR_CONTRACT:
    return "precondition violated";
  case VD_ERROR_RANGE:
    return "argument out of range";
  case VD_ERROR_NUMERICAL:
    return "numerical failure";
  case VD_ERROR_BLOWUP:
    return "integration blew up";
  case VD_ERROR_IO:
    return "i/o error";
  case VD_ERROR_NULL_POINTER:
    return "null pointer";
  case VD_ERROR_INSUFFICIENT_BUFFER:
    return "insufficient buffer";
  default:
    return "unknown error";
  }
}

const char* vd_last_error_message(void) { return g_last_error.c_str(); }

int vd_params_init_preset(vd_params_t* params, const char* name) {
  if (!name)
    return null_pointer("name");
  return init_params(params, [&] { return viraldyn::preset(name); });
}

int vd_params_init_text(vd_params_t* params, const char* text) {
  if (!text)
    return null_pointer("text");
  return init_params(params, [&] { return viraldyn::parse_params(text); });
}

int vd_params_init_file(vd_params_t* params, const char* path) {
  if (!path)
    return null_pointer("path");
  return init_params(params, [&] { return viraldyn::load_params_file(path); });
}

int vd_params_destroy(vd_params_t params) {
  delete params;
  return VD_OK;
}

int vd_params_set(vd_params_t params, const char* name, double value) {
  if (!params || !name)
    return null_pointer("params or name");
  return guard([&] {
    viraldyn::set_param(params->params, viraldyn::param_from_name(name), value);
    return VD_OK;
  });
}

int vd_params_get(vd_params_t params, const char* name, double* value) {
  if (!params || !name || !value)
    return null_pointer("params, name or value");
  return guard([&] {
    *value = viraldyn::get_param(params->params, viraldyn::param_from_name(name));
    return VD_OK;
  });
}

int vd_params_validate(vd_params_t params) {
  if (!params)
    return null_pointer("params");
  return guard([&] {
    viraldyn::validate(params->params);
    return VD_OK;
  });
}

int vd_r0(vd_params_t params, double* r0) {
  if (!params || !r0)
    return null_pointer("params or r0");
  return guard([&] {
    viraldyn::validate(params->params);
    *r0 = viraldyn::r0(params->params);
    return VD_OK;
  });
}

int vd_t0(vd_params_t params, double* t0) {
  if (!params || !t0)
    return null_pointer("params or t0");
  return guard([&] {
    viraldyn::validate(params->params);
    *t0 = viraldyn::infection_free_t0(params->params);
    return VD_OK;
  });
}

int vd_infected_equilibrium(vd_params_t params, double state[3]) {
  if (!params || !state)
    return null_pointer("params or state");
  return guard([&] {
    viraldyn::validate(params->params);
    auto e2 = viraldyn::solve_infected(params->params);
    if (!e2)
      return static_cast<int>(VD_NO_RESULT);
    copy_state(e2->state, state);
    return static_cast<int>(VD_OK);
  });
}

int vd_stability_json(vd_params_t params, char* out, size_t* out_len) {
  if (!params)
    return null_pointer("params");
  return guard([&] { return write_text(viraldyn::stability_json(params->params), out, out_len); });
}

int vd_default_history(vd_params_t params, double state[3]) {
  if (!params || !state)
    return null_pointer("params or state");
  return guard([&] {
    viraldyn::validate(params->params);
    copy_state(viraldyn::default_history(params->params), state);
    return VD_OK;
  });
}

int vd_integrate(vd_trajectory_t* traj, vd_params_t params, const double history[3], double t_end,
                 double step) {
  if (!traj || !params)
    return null_pointer("traj or params");
  *traj = nullptr;
  return guard([&] {
    viraldyn::validate(params->params);
    const viraldyn::State h =
        history ? *to_state(history) : viraldyn::default_history(params->params);
    *traj = new vd_trajectory_struct{
        viraldyn::integrate(params->params, viraldyn::History::constant(h), t_end, step)};
    return VD_OK;
  });
}

int vd_trajectory_destroy(vd_trajectory_t traj) {
  delete traj;
  return VD_OK;
}

int vd_trajectory_size(vd_trajectory_t traj, size_t* size) {
  if (!traj || !size)
    return null_pointer("traj or size");
  *size = traj->traj.size();
  return VD_OK;
}

int vd_trajectory_sample(vd_trajectory_t traj, size_t index, double* t, double state[3]) {
  if (!traj || !t || !state)
    return null_pointer("traj, t or state");
  if (index >= traj->traj.size()) {
    g_last_error = "sample index out of range";
    return VD_ERROR_RANGE;
  }
  *t = traj->traj.times()[index];
  copy_state(traj->traj.states()[index], state);
  return VD_OK;
}

int vd_trajectory_eval(vd_trajectory_t traj, double t, double state[3]) {
  if (!traj || !state)
    return null_pointer("traj or state");
  return guard([&] {
    copy_state(viraldyn::dense_eval(traj->traj, t), state);
    return VD_OK;
  });
}

int vd_trajectory_step(vd_trajectory_t traj, double* step) {
  if (!traj || !step)
    return null_pointer("traj or step");
  *step = traj->traj.diagnostics().step;
  return VD_OK;
}

int vd_trajectory_positivity(vd_trajectory_t traj, size_t* clamped, size_t* violations) {
  if (!traj || !clamped || !violations)
    return null_pointer("traj, clamped or violations");
  *clamped = traj->traj.diagnostics().clamped;
  *violations = traj->traj.diagnostics().positivity_violations;
  return VD_OK;
}

int vd_trajectory_csv(vd_trajectory_t traj, char* out, size_t* out_len) {
  if (!traj)
    return null_pointer("traj");
  return guard([&] { return write_text(viraldyn::trajectory_csv(traj->traj), out, out_len); });
}

int vd_trajectory_write_csv(vd_trajectory_t traj, const char* path) {
  if (!traj || !path)
    return null_pointer("traj or path");
  return guard([&] {
    viraldyn::write_trajectory_csv(traj->traj, path);
    return VD_OK;
  });
}

int vd_verdict_json(vd_trajectory_t traj, double settle_tol, char* out, size_t* out_len) {
  if (!traj)
    return null_pointer("traj");
  return guard([&] {
    return write_text(viraldyn::verdict_json(traj->traj, verdict_for(traj->traj, settle_tol)), out,
                      out_len);
  });
}

int vd_peaks_csv(vd_trajectory_t traj, double settle_tol, char* out, size_t* out_len) {
  if (!traj)
    return null_pointer("traj");
  return guard([&] {
    return write_text(viraldyn::peaks_csv(verdict_for(traj->traj, settle_tol).peaks), out,
                      out_len);
  });
}

int vd_permanence_json(vd_trajectory_t traj, char* out, size_t* out_len) {
  if (!traj)
    return null_pointer("traj");
  return guard([&] {
    const auto bounds = viraldyn::permanence_bounds(traj->traj.params());
    const auto check = viraldyn::check_permanence(traj->traj, bounds);
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& c : check.checks)
      doc.push_back({{"name", c.name},
                     {"observed", c.observed},
                     {"bound", c.bound},
                     {"margin", c.margin},
                     {"status", viraldyn::to_string(c.status)}});
    return write_text(doc.dump(2) + "\n", out, out_len);
  });
}

int vd_sensitivity_index(vd_params_t params, const char* name, int analytic, double* index) {
  if (!params || !name || !index)
    return null_pointer("params, name or index");
  return guard([&] {
    *index = viraldyn::sensitivity_index(params->params, viraldyn::param_from_name(name),
                                         analytic ? viraldyn::SensitivityMethod::Analytic
                                                  : viraldyn::SensitivityMethod::CentralDifference);
    return VD_OK;
  });
}

int vd_sensitivity_csv(vd_params_t params, char* out, size_t* out_len) {
  if (!params)
    return null_pointer("params");
  return guard([&] {
    return write_text(viraldyn::sensitivity_csv(viraldyn::full_report(params->params)), out,
                      out_len);
  });
}

int vd_sweep_csv(vd_params_t params, const char* axis, const double* grid, size_t grid_len,
                 double t_end, double step, const double history[3], size_t max_workers,
                 char* out, size_t* out_len) {
  if (!params || !axis || (!grid && grid_len > 0))
    return null_pointer("params, axis or grid");
  return guard([&] {
    viraldyn::SweepConfig config;
    config.base = params->params;
    config.axis = viraldyn::sweep_axis_from_name(axis);
    config.grid.assign(grid, grid + grid_len);
    config.t_end = t_end;
    config.step = step;
    config.history = to_state(history);
    config.max_workers = max_workers;
    return write_text(viraldyn::sweep_csv(viraldyn::run_sweep(config)), out, out_len);
  });
}

} // extern "C"
