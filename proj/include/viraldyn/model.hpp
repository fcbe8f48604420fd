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

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace viraldyn {

/// Constants of the delayed hepatitis model with mitotic transmission and a
/// saturating incidence bTV/(1 + alpha V). Units are documented per field and
/// never converted.
struct ModelParams {
  double s = 0.0;      ///< recruitment of uninfected cells, cells/vol/day
  double d = 0.0;      ///< death rate of uninfected cells, 1/day
  double a = 0.0;      ///< maximum mitotic proliferation rate, 1/day
  double t_max = 0.0;  ///< carrying capacity, cells/vol
  double b = 0.0;      ///< infection rate constant, vol/virion/day
  double alpha = 0.0;  ///< saturation constant, vol/virion
  double mu = 0.0;     ///< infected-cell death rate, 1/day
  double p = 0.0;      ///< virion production per infected cell, virions/cell/day
  double c = 0.0;      ///< virion clearance rate, 1/day
  double tau = 0.0;    ///< intracellular delay, day

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Parameter identifiers, in the alphabetical order used for reports.
enum class Param { a, alpha, b, c, d, mu, p, s, t_max, tau };

inline constexpr std::array<Param, 10> kAllParams = {
    Param::a, Param::alpha, Param::b,  Param::c,     Param::d,
    Param::mu, Param::p,    Param::s,  Param::t_max, Param::tau};

std::string_view param_name(Param which);
/// Throws InvalidInput for unknown names.
Param param_from_name(std::string_view name);
double get_param(const ModelParams& params, Param which);
void set_param(ModelParams& params, Param which, double value);

/// (T, I, V): uninfected cells, infected cells, free virions.
struct State {
  double t_cells = 0.0;
  double i_cells = 0.0;
  double virions = 0.0;

  double& operator[](int k) { return k == 0 ? t_cells : (k == 1 ? i_cells : virions); }
  double operator[](int k) const { return k == 0 ? t_cells : (k == 1 ? i_cells : virions); }

  friend bool operator==(const State&, const State&) = default;
};

/// Rates of change (dT/dt, dI/dt, dV/dt). Same layout as State.
using Rates = State;

/// The state at t and at t - tau; only T(t - tau) and V(t - tau) enter.
struct DelayedInput {
  State current;
  State lagged;
};

/// Throws InvalidInput when a field is non-finite or outside its domain
/// (s, d, a, t_max, b, mu, p, c > 0; alpha, tau >= 0). Returns soft
/// warnings, currently only d > mu.
std::vector<std::string> validate(const ModelParams& params);

/// Right-hand side of the delayed system. Throws InvalidInput on
/// non-finite input.
Rates eval_rhs(const ModelParams& params, const DelayedInput& input);

/// Unique positive root of s - dT + aT(1 - T/Tmax) = 0.
double infection_free_t0(const ModelParams& params);

/// Basic reproduction number (1/mu)[b p T0 / c + a(1 - T0/Tmax)].
double r0(const ModelParams& params);

/// Max-norm of a state.
double max_norm(const State& x);

/// Componentwise sum of the absolute values of the terms that make up
/// eval_rhs. Used to turn RHS residuals into relative quantities.
Rates rhs_term_scale(const ModelParams& params, const DelayedInput& input);

namespace detail {

/// Positive root of qa*x^2 + qb*x - qc = 0 with qa > 0, qc > 0, computed
/// without cancellation.
double positive_quadratic_root(double qa, double qb, double qc);

/// (b~/mu) T/(1 + alpha~ I) + (a/mu)(1 - (T + I)/Tmax), with b~ = bp/c and
/// alpha~ = alpha p/c. Shared by r0 and F(I2) so that F(0) == R0 bitwise.
double reproduction_ratio(const ModelParams& params, double t_cells, double i_cells);

} // namespace detail

} // namespace viraldyn
