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

#include "viraldyn/dde.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "viraldyn/csv.hpp"
#include "viraldyn/error.hpp"

namespace viraldyn {

namespace {

State axpy(const State& x, double h, const Rates& k) {
  return {x.t_cells + h * k.t_cells, x.i_cells + h * k.i_cells, x.virions + h * k.virions};
}

bool finite(const State& x) {
  return std::isfinite(x.t_cells) && std::isfinite(x.i_cells) && std::isfinite(x.virions);
}

// Cubic Hermite on [x0, x1] of width h at fraction theta.
State hermite(const State& x0, const Rates& m0, const State& x1, const Rates& m1, double h,
              double theta) {
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + theta;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  State out;
  for (int k = 0; k < 3; ++k)
    out[k] = h00 * x0[k] + h10 * h * m0[k] + h01 * x1[k] + h11 * h * m1[k];
  return out;
}

// Index j with times[j] <= t < times[j+1] (last interval for t == back()).
std::size_t locate(const std::vector<double>& times, double t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t j = static_cast<std::size_t>(it - times.begin());
  j = (j == 0) ? 0 : j - 1;
  return std::min(j, times.size() - 2);
}

} // namespace

// ---------------------------------------------------------------- History

History History::constant(const State& x) {
  History h;
  h.constant_ = x;
  return h;
}

History History::sampled(std::vector<double> times, std::vector<State> states) {
  if (times.size() != states.size() || times.size() < 2)
    throw InvalidInput("sampled history needs at least two (time, state) pairs");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw InvalidInput("sampled history times must be strictly increasing");
  History h;
  h.times_ = std::move(times);
  h.states_ = std::move(states);
  // Three-point slopes on a possibly non-uniform grid, one-sided at the ends.
  const auto& ts = h.times_;
  const auto& xs = h.states_;
  const std::size_t n = ts.size();
  h.slopes_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (int c = 0; c < 3; ++c) {
      if (k == 0) {
        h.slopes_[k][c] = (xs[1][c] - xs[0][c]) / (ts[1] - ts[0]);
      } else if (k == n - 1) {
        h.slopes_[k][c] = (xs[k][c] - xs[k - 1][c]) / (ts[k] - ts[k - 1]);
      } else {
        const double hl = ts[k] - ts[k - 1];
        const double hr = ts[k + 1] - ts[k];
        const double dl = (xs[k][c] - xs[k - 1][c]) / hl;
        const double dr = (xs[k + 1][c] - xs[k][c]) / hr;
        h.slopes_[k][c] = (hr * dl + hl * dr) / (hl + hr);
      }
    }
  }
  return h;
}

State History::at(double t) const {
  if (is_constant())
    return constant_;
  const double slack = 1e-12 * (times_.back() - times_.front());
  if (t < times_.front() && t >= times_.front() - slack)
    t = times_.front();
  if (t < times_.front() || t > times_.back())
    throw RangeError("history queried at t = " + std::to_string(t) + " outside its samples");
  const std::size_t j = locate(times_, t);
  if (t == times_[j])
    return states_[j];
  const double h = times_[j + 1] - times_[j];
  return hermite(states_[j], slopes_[j], states_[j + 1], slopes_[j + 1], h, (t - times_[j]) / h);
}

State History::initial() const { return is_constant() ? constant_ : states_.back(); }

double History::earliest_time() const {
  return is_constant() ? -std::numeric_limits<double>::infinity() : times_.front();
}

// ------------------------------------------------------------- Trajectory

Trajectory::Trajectory(ModelParams params, History history, std::vector<double> times,
                       std::vector<State> states, std::vector<Rates> derivatives,
                       IntegrationDiagnostics diagnostics)
    : params_(params), history_(std::move(history)), times_(std::move(times)),
      states_(std::move(states)), derivatives_(std::move(derivatives)),
      diagnostics_(diagnostics) {}

double default_step(const ModelParams& pr, double t_end) {
  const double h_cap = 0.2 / std::max({pr.c, pr.mu, pr.a, pr.d});
  if (pr.tau > 0.0) {
    const double target = std::clamp(pr.tau / 40.0, h_cap / 8.0, h_cap);
    return pr.tau / std::ceil(pr.tau / target);
  }
  return std::min(t_end / 1e5, h_cap);
}

Trajectory integrate(const ModelParams& params, const History& history, double t_end,
                     double step) {
  validate(params);
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw ContractViolation("integrate: t_end must be positive and finite");
  const double tau = params.tau;
  double h = step > 0.0 ? step : default_step(params, t_end);
  if (!std::isfinite(h))
    throw ContractViolation("integrate: step must be finite");
  std::size_t lag_steps = 0;
  if (tau > 0.0) {
    if (h > tau * (1.0 + 1e-12))
      throw ContractViolation("integrate: step must not exceed tau");
    lag_steps = static_cast<std::size_t>(std::ceil(tau / h - 1e-9));
    h = tau / static_cast<double>(lag_steps);
  }
  if (!history.is_constant()) {
    if (history.times().back() != 0.0)
      throw ContractViolation("integrate: sampled history must end at t = 0");
    if (history.earliest_time() > -tau * (1.0 - 1e-12))
      throw ContractViolation("integrate: sampled history must cover [-tau, 0]");
  }
  const auto& hist_states =
      history.is_constant() ? std::vector<State>{history.initial()} : history.states();
  for (const State& x : hist_states)
    if (!finite(x) || x.t_cells < 0.0 || x.i_cells < 0.0 || x.virions < 0.0)
      throw ContractViolation("integrate: history must be finite and nonnegative");

  const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
  std::vector<double> times;
  std::vector<State> xs;
  std::vector<Rates> fs;
  times.reserve(n_steps + 1);
  xs.reserve(n_steps + 1);
  fs.reserve(n_steps + 1);

  IntegrationDiagnostics diag;
  diag.step = h;
  State scale{};
  for (const State& x : hist_states)
    for (int c = 0; c < 3; ++c)
      scale[c] = std::max(scale[c], std::abs(x[c]));

  // Lagged state at t_k + theta h - tau, theta in {0, 1/2, 1}.
  auto lagged = [&](std::size_t k, double theta, const State& current) -> State {
    if (tau == 0.0)
      return current;
    const double t = (static_cast<double>(k) + theta) * h - tau;
    if (k + (theta > 0.0 ? 1 : 0) <= lag_steps) {
      if (t <= 0.0)
        return history.at(std::max(t, -tau));
    }
    const std::size_t j = k - lag_steps;  // t lies in [t_j, t_{j+1}]
    if (theta == 0.0)
      return xs[j];
    if (theta == 1.0)
      return xs[j + 1];
    return hermite(xs[j], fs[j], xs[j + 1], fs[j + 1], h, theta);
  };

  // A non-finite stage means the step has already diverged.
  auto rhs = [&](const State& now, const State& lag, std::size_t k) {
    if (!finite(now) || !finite(lag))
      throw BlowUp("integrate: non-finite state after t = " + std::to_string(times[k]), times[k]);
    return eval_rhs(params, {now, lag});
  };

  times.push_back(0.0);
  xs.push_back(history.initial());
  fs.push_back(eval_rhs(params, {xs[0], lagged(0, 0.0, xs[0])}));

  for (std::size_t k = 0; k < n_steps; ++k) {
    const State& x = xs[k];
    const State lag_mid = lagged(k, 0.5, x);
    const Rates k1 = fs[k];
    const State x2 = axpy(x, 0.5 * h, k1);
    const Rates k2 = rhs(x2, tau == 0.0 ? x2 : lag_mid, k);
    const State x3 = axpy(x, 0.5 * h, k2);
    const Rates k3 = rhs(x3, tau == 0.0 ? x3 : lag_mid, k);
    const State x4 = axpy(x, h, k3);
    const Rates k4 = rhs(x4, lagged(k, 1.0, x4), k);
    State next;
    for (int c = 0; c < 3; ++c)
      next[c] = x[c] + h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    if (!finite(next))
      throw BlowUp("integrate: non-finite state after t = " + std::to_string(times[k]), times[k]);

    for (int c = 0; c < 3; ++c) {
      scale[c] = std::max(scale[c], std::abs(next[c]));
      if (next[c] < 0.0) {
        if (next[c] >= -kPositivityEps * scale[c]) {
          next[c] = 0.0;
          ++diag.clamped;
        } else {
          ++diag.positivity_violations;
        }
      }
      if (scale[c] > 0.0)
        diag.min_scaled_component = std::min(diag.min_scaled_component, next[c] / scale[c]);
    }

    times.push_back(static_cast<double>(k + 1) * h);
    xs.push_back(next);
    fs.push_back(rhs(next, lagged(k + 1, 0.0, next), k));
  }
  diag.steps = n_steps;
  return Trajectory(params, history, std::move(times), std::move(xs), std::move(fs), diag);
}

State dense_eval(const Trajectory& traj, double t) {
  if (traj.empty())
    throw RangeError("dense_eval on an empty trajectory");
  const double tau = traj.params().tau;
  if (t < 0.0) {
    if (t < -tau)
      throw RangeError("dense_eval: t = " + std::to_string(t) + " before -tau");
    return traj.history().at(t);
  }
  const auto& ts = traj.times();
  if (t > ts.back())
    throw RangeError("dense_eval: t = " + std::to_string(t) + " past the end");
  if (ts.size() == 1)
    return traj.states().front();
  const std::size_t j = locate(ts, t);
  if (t == ts[j])
    return traj.states()[j];
  if (t == ts[j + 1])
    return traj.states()[j + 1];
  const double h = ts[j + 1] - ts[j];
  return hermite(traj.states()[j], traj.derivatives()[j], traj.states()[j + 1],
                 traj.derivatives()[j + 1], h, (t - ts[j]) / h);
}

std::string trajectory_csv(const Trajectory& traj) {
  csv::Table table;
  table.header = {"t", "T", "I", "V"};
  table.rows.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const State& x = traj.states()[k];
    table.rows.push_back({csv::format_double(traj.times()[k]), csv::format_double(x.t_cells),
                          csv::format_double(x.i_cells), csv::format_double(x.virions)});
  }
  return csv::serialize(table);
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  out << trajectory_csv(traj);
  if (!out)
    throw IoError("write failed for " + path.string());
}

TrajectorySamples parse_trajectory_csv(std::string_view text) {
  const csv::Table table = csv::parse(text);
  if (table.header != std::vector<std::string>{"t", "T", "I", "V"})
    throw InvalidInput("trajectory csv: expected header t,T,I,V");
  TrajectorySamples out;
  for (const auto& row : table.rows) {
    out.times.push_back(csv::parse_double(row[0]));
    out.states.push_back(
        {csv::parse_double(row[1]), csv::parse_double(row[2]), csv::parse_double(row[3])});
  }
  return out;
}

} // namespace viraldyn
