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

#include "viraldyn/model.hpp"

namespace viraldyn {

enum class EquilibriumKind { InfectionFree, Infected };

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::InfectionFree;
  State state;
  /// Max-norm of eval_rhs at `state`, relative to max_norm(state).
  double residual = 0.0;
  double r0_at_params = 0.0;
};

/// Default relative tolerance for equilibrium residuals.
inline constexpr double kEquilibriumTol = 1e-8;

/// Relative max-norm residual of the right-hand side at a constant state.
double equilibrium_residual(const ModelParams& params, const State& x);

/// E1 = (T0, 0, 0).
Equilibrium solve_infection_free(const ModelParams& params);

/// T2 = f(I2): positive root of
///   (a/Tmax) T^2 + (d - a + a I2/Tmax + b~ I2/(1 + alpha~ I2)) T - s = 0.
/// f(0) == T0 bitwise.
double f_of_i(const ModelParams& params, double i2);

/// F(I2) = (b~/mu) f(I2)/(1 + alpha~ I2) + (a/mu)(1 - (f(I2) + I2)/Tmax).
/// big_f(p, 0) == r0(p) bitwise.
double big_f(const ModelParams& params, double i2);

/// Unique E2 when R0 > 1; std::nullopt when R0 <= 1 (not an error).
/// F(I2) = 1 is bracketed on [0, Tmax] (doubling the upper end up to 60
/// times) and bisected to 1e-12 relative width. Throws BracketFailure when
/// no sign change is found, NumericalFailure when the residual at the
/// result exceeds `tol`.
std::optional<Equilibrium> solve_infected(const ModelParams& params,
                                          double tol = kEquilibriumTol);

} // namespace viraldyn
