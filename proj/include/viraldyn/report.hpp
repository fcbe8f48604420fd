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

#include <string>

#include "viraldyn/analysis.hpp"
#include "viraldyn/dde.hpp"
#include "viraldyn/linearization.hpp"

namespace viraldyn {

/// R0, T0, both equilibria and their stability reports as JSON text.
std::string stability_json(const ModelParams& params);

/// Verdict plus the run metadata (parameters, delay, step, constant
/// history) and the detection thresholds that produced it.
std::string verdict_json(const Trajectory& traj, const TrajectoryVerdict& verdict);

} // namespace viraldyn
