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

#include "viraldyn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "viraldyn/csv.hpp"
#include "viraldyn/error.hpp"

namespace viraldyn {

namespace {

bool is_stable(Classification c, double tau, const CrossingAnalysis& crossing) {
  switch (c) {
  case Classification::StableAllTau:
    return true;
  case Classification::StableBelowTau0:
    return crossing.tau0 && tau < *crossing.tau0;
  default:
    return false;
  }
}

std::string cell(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

} // namespace

State default_history(const ModelParams& params) {
  if (auto e2 = solve_infected(params))
    return {1.1 * e2->state.t_cells, 1.1 * e2->state.i_cells, 1.1 * e2->state.virions};
  const double t0 = infection_free_t0(params);
  return {t0, 1e-3 * t0, 1e-3 * t0};
}

PointResult run_point(const ModelParams& params, double t_end, double step,
                      const std::optional<State>& history, const DetectionSettings& settings) {
  validate(params);
  PointResult out;
  const Equilibrium e1 = solve_infection_free(params);
  out.infected = solve_infected(params);
  out.report = classify(params, out.infected ? *out.infected : e1);
  out.history = history ? *history : default_history(params);

  std::vector<Equilibrium> candidates{e1};
  if (out.infected)
    candidates.push_back(*out.infected);
  const Trajectory traj = integrate(params, History::constant(out.history), t_end, step);
  out.verdict = detect_outcome(traj, candidates, settings);

  const bool stable = is_stable(out.report.classification, params.tau, out.report.crossing);
  const Equilibrium& target = out.infected ? *out.infected : e1;
  switch (out.verdict.outcome) {
  case Outcome::Undecided:
    out.agreement = "undecided";
    break;
  case Outcome::ConvergedTo:
    out.agreement = stable && out.verdict.equilibrium->kind == target.kind ? "agree" : "disagree";
    break;
  case Outcome::SustainedOscillation:
    out.agreement = stable ? "disagree" : "agree";
    break;
  }
  return out;
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
  case SweepAxis::tau:
    return "tau";
  case SweepAxis::c:
    return "c";
  case SweepAxis::alpha:
    return "alpha";
  }
  return "tau";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "tau")
    return SweepAxis::tau;
  if (name == "c")
    return SweepAxis::c;
  if (name == "alpha")
    return SweepAxis::alpha;
  throw InvalidInput("unknown sweep axis '" + name + "' (expected tau, c or alpha)");
}

std::size_t sweep_workers(std::size_t points, std::size_t cap) {
  std::size_t n = cap;
  if (n == 0) {
    if (const char* env = std::getenv("VIRALDYN_THREADS")) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && *end == '\0' && v > 0)
        n = static_cast<std::size_t>(v);
    }
  }
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, points));
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.grid.empty())
    throw ContractViolation("sweep grid is empty");
  for (std::size_t k = 1; k < config.grid.size(); ++k)
    if (!(config.grid[k] > config.grid[k - 1]))
      throw ContractViolation("sweep grid must be strictly increasing");
  if (!(config.t_end > 0.0))
    throw ContractViolation("sweep t_end must be positive");

  std::vector<SweepRow> rows(config.grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      SweepRow& row = rows[k];
      row.value = config.grid[k];
      ModelParams params = config.base;
      switch (config.axis) {
      case SweepAxis::tau:
        params.tau = row.value;
        break;
      case SweepAxis::c:
        params.c = row.value;
        break;
      case SweepAxis::alpha:
        params.alpha = row.value;
        break;
      }
      try {
        row.result = run_point(params, config.t_end, config.step, config.history, config.settings);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const std::size_t n = sweep_workers(rows.size(), config.max_workers);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  csv::Table table;
  table.header = {"value", "classification", "verdict", "period", "agreement", "error"};
  for (const auto& row : rows) {
    std::vector<std::string> cells{csv::format_double(row.value), "", "", "", "", cell(row.error)};
    if (row.result) {
      const PointResult& r = *row.result;
      cells[1] = to_string(r.report.classification);
      cells[2] = to_string(r.verdict.outcome);
      if (r.verdict.outcome == Outcome::ConvergedTo)
        cells[2] += r.verdict.equilibrium->kind == EquilibriumKind::Infected ? "(E2)" : "(E1)";
      if (r.verdict.outcome == Outcome::SustainedOscillation)
        cells[3] = csv::format_double(r.verdict.period);
      cells[4] = r.agreement;
    }
    table.rows.push_back(std::move(cells));
  }
  return csv::serialize(table);
}

} // namespace viraldyn
