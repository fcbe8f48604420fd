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

#include "viraldyn/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "viraldyn/error.hpp"

namespace viraldyn {

double equilibrium_residual(const ModelParams& params, const State& x) {
  const DelayedInput in{x, x};
  const Rates rhs = eval_rhs(params, in);
  const Rates scale = rhs_term_scale(params, in);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (scale[k] > 0.0)
      worst = std::max(worst, std::abs(rhs[k]) / scale[k]);
  }
  return worst;
}

Equilibrium solve_infection_free(const ModelParams& params) {
  Equilibrium eq;
  eq.kind = EquilibriumKind::InfectionFree;
  eq.state = {infection_free_t0(params), 0.0, 0.0};
  eq.residual = equilibrium_residual(params, eq.state);
  eq.r0_at_params = r0(params);
  return eq;
}

double f_of_i(const ModelParams& pr, double i2) {
  const double b_eff = pr.b * pr.p / pr.c;
  const double alpha_eff = pr.alpha * pr.p / pr.c;
  const double linear = pr.d - pr.a + pr.a * i2 / pr.t_max + b_eff * i2 / (1.0 + alpha_eff * i2);
  return detail::positive_quadratic_root(pr.a / pr.t_max, linear, pr.s);
}

double big_f(const ModelParams& params, double i2) {
  return detail::reproduction_ratio(params, f_of_i(params, i2), i2);
}

std::optional<Equilibrium> solve_infected(const ModelParams& params, double tol) {
  const double r = r0(params);
  if (!(r > 1.0))
    return std::nullopt;

  auto g = [&](double i2) { return big_f(params, i2) - 1.0; };
  double lo = 0.0;
  double hi = params.t_max;
  int doublings = 0;
  while (g(hi) >= 0.0) {
    if (++doublings > 60) {
      std::ostringstream msg;
      msg << "F(I2) - 1 has no sign change on [" << lo << ", " << hi << "]";
      throw BracketFailure(msg.str(), lo, hi);
    }
    lo = hi;
    hi *= 2.0;
  }
  // g(lo) > 0 > g(hi); F is strictly decreasing.
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double i2 = 0.5 * (lo + hi);

  Equilibrium eq;
  eq.kind = EquilibriumKind::Infected;
  eq.state = {f_of_i(params, i2), i2, params.p * i2 / params.c};
  eq.residual = equilibrium_residual(params, eq.state);
  eq.r0_at_params = r;
  if (!(eq.residual <= tol)) {
    std::ostringstream msg;
    msg << "infected equilibrium residual " << eq.residual << " exceeds " << tol;
    throw NumericalFailure(msg.str());
  }
  return eq;
}

} // namespace viraldyn
