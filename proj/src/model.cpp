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

#include "viraldyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viraldyn/error.hpp"

namespace viraldyn {

namespace {

constexpr std::array<std::string_view, 10> kNames = {
    "a", "alpha", "b", "c", "d", "mu", "p", "s", "t_max", "tau"};

bool all_finite(const State& x) {
  return std::isfinite(x.t_cells) && std::isfinite(x.i_cells) && std::isfinite(x.virions);
}

} // namespace

std::string_view param_name(Param which) {
  const auto k = static_cast<std::size_t>(which);
  if (k >= kNames.size())
    throw ContractViolation("no parameter with index " + std::to_string(k));
  return kNames[k];
}

Param param_from_name(std::string_view name) {
  auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end())
    throw InvalidInput("unknown parameter '" + std::string(name) + "'");
  return static_cast<Param>(it - kNames.begin());
}

double get_param(const ModelParams& params, Param which) {
  switch (which) {
  case Param::a: return params.a;
  case Param::alpha: return params.alpha;
  case Param::b: return params.b;
  case Param::c: return params.c;
  case Param::d: return params.d;
  case Param::mu: return params.mu;
  case Param::p: return params.p;
  case Param::s: return params.s;
  case Param::t_max: return params.t_max;
  case Param::tau: return params.tau;
  }
  throw InvalidInput("bad parameter id");
}

void set_param(ModelParams& params, Param which, double value) {
  switch (which) {
  case Param::a: params.a = value; return;
  case Param::alpha: params.alpha = value; return;
  case Param::b: params.b = value; return;
  case Param::c: params.c = value; return;
  case Param::d: params.d = value; return;
  case Param::mu: params.mu = value; return;
  case Param::p: params.p = value; return;
  case Param::s: params.s = value; return;
  case Param::t_max: params.t_max = value; return;
  case Param::tau: params.tau = value; return;
  }
  throw InvalidInput("bad parameter id");
}

std::vector<std::string> validate(const ModelParams& params) {
  for (Param k : kAllParams) {
    const double v = get_param(params, k);
    const std::string name(param_name(k));
    if (!std::isfinite(v))
      throw InvalidInput("parameter " + name + " is not finite");
    const bool may_be_zero = (k == Param::alpha || k == Param::tau);
    if (may_be_zero ? v < 0.0 : v <= 0.0)
      throw InvalidInput("parameter " + name + (may_be_zero ? " must be >= 0" : " must be > 0"));
  }
  std::vector<std::string> warnings;
  if (params.d > params.mu)
    warnings.emplace_back("d > mu: permanence bounds assume d <= mu");
  return warnings;
}

Rates eval_rhs(const ModelParams& pr, const DelayedInput& in) {
  if (!all_finite(in.current) || !all_finite(in.lagged))
    throw InvalidInput("eval_rhs: non-finite state");
  const auto& [t, i, v] = in.current;
  const double t_lag = in.lagged.t_cells;
  const double v_lag = in.lagged.virions;
  const double crowding = 1.0 - (t + i) / pr.t_max;
  const double incidence = pr.b * t * v / (1.0 + pr.alpha * v);
  const double incidence_lag = pr.b * t_lag * v_lag / (1.0 + pr.alpha * v_lag);
  return {pr.s - pr.d * t + pr.a * t * crowding - incidence,
          incidence_lag + pr.a * i * crowding - pr.mu * i,
          pr.p * i - pr.c * v};
}

Rates rhs_term_scale(const ModelParams& pr, const DelayedInput& in) {
  const auto& [t, i, v] = in.current;
  const double t_lag = in.lagged.t_cells;
  const double v_lag = in.lagged.virions;
  const double growth = std::abs(pr.a * (1.0 - (t + i) / pr.t_max));
  const double incidence = std::abs(pr.b * t * v / (1.0 + pr.alpha * v));
  const double incidence_lag = std::abs(pr.b * t_lag * v_lag / (1.0 + pr.alpha * v_lag));
  return {pr.s + pr.d * std::abs(t) + growth * std::abs(t) + incidence,
          incidence_lag + growth * std::abs(i) + pr.mu * std::abs(i),
          pr.p * std::abs(i) + pr.c * std::abs(v)};
}

double infection_free_t0(const ModelParams& pr) {
  return detail::positive_quadratic_root(pr.a / pr.t_max, pr.d - pr.a, pr.s);
}

double r0(const ModelParams& pr) {
  return detail::reproduction_ratio(pr, infection_free_t0(pr), 0.0);
}

double max_norm(const State& x) {
  return std::max({std::abs(x.t_cells), std::abs(x.i_cells), std::abs(x.virions)});
}

namespace detail {

double positive_quadratic_root(double qa, double qb, double qc) {
  const double disc = std::sqrt(qb * qb + 4.0 * qa * qc);
  // Pick the branch that adds magnitudes.
  if (qb < 0.0)
    return (-qb + disc) / (2.0 * qa);
  return 2.0 * qc / (qb + disc);
}

double reproduction_ratio(const ModelParams& pr, double t_cells, double i_cells) {
  const double b_eff = pr.b * pr.p / pr.c;
  const double alpha_eff = pr.alpha * pr.p / pr.c;
  return b_eff / pr.mu * t_cells / (1.0 + alpha_eff * i_cells) +
         pr.a / pr.mu * (1.0 - (t_cells + i_cells) / pr.t_max);
}

} // namespace detail

} // namespace viraldyn
