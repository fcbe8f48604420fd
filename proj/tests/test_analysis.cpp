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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "viraldyn/analysis.hpp"
#include "viraldyn/error.hpp"
#include "viraldyn/params_io.hpp"

using namespace viraldyn;

namespace {

// A trajectory whose V component is a pure sinusoid (derivatives consistent).
Trajectory sinusoid(double period, double shift = 0.0, double scale = 1.0, double t_end = 400.0) {
  std::vector<double> ts;
  std::vector<State> xs;
  std::vector<Rates> ds;
  const double w = 2.0 * std::numbers::pi / period;
  for (int k = 0; k * 0.05 <= t_end; ++k) {
    const double t = k * 0.05;
    ts.push_back(t + shift);
    xs.push_back({10.0, 20.0, scale * (50.0 + 10.0 * std::sin(w * t))});
    ds.push_back({0.0, 0.0, scale * 10.0 * w * std::cos(w * t)});
  }
  return Trajectory(preset("fig5"), History::constant(xs.front()), ts, xs, ds, {});
}

std::vector<Equilibrium> fig5_candidates(const ModelParams& p) {
  return {solve_infection_free(p), *solve_infected(p)};
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("pure sinusoid is a sustained oscillation with the right period") {
  const TrajectoryVerdict v = detect_outcome(sinusoid(17.3), {});
  CHECK(v.outcome == Outcome::SustainedOscillation);
  CHECK(v.period == doctest::Approx(17.3).epsilon(0.01));
  CHECK(v.amplitude.virions == doctest::Approx(10.0).epsilon(1e-3));
  CHECK(v.amplitude.t_cells == 0.0);
  CHECK(v.transient_fraction == 0.5);
}

TEST_CASE("peak detection is invariant to time shift and V scaling") {
  const auto base = detect_outcome(sinusoid(23.0), {}).peaks;
  const auto shifted = detect_outcome(sinusoid(23.0, 1000.0), {}).peaks;
  const auto scaled = detect_outcome(sinusoid(23.0, 0.0, 7.5), {}).peaks;
  REQUIRE(base.size() == shifted.size());
  REQUIRE(base.size() == scaled.size());
  for (std::size_t k = 0; k < base.size(); ++k) {
    CHECK(shifted[k].t - 1000.0 == doctest::Approx(base[k].t).epsilon(1e-9));
    CHECK(scaled[k].t == doctest::Approx(base[k].t).epsilon(1e-12));
    CHECK(scaled[k].value == doctest::Approx(7.5 * base[k].value).epsilon(1e-12));
  }
}

TEST_CASE("find_peaks refines to the vertex and respects the noise floor") {
  std::vector<double> ts, vs;
  for (int k = 0; k <= 100; ++k) {
    ts.push_back(0.1 * k);
    vs.push_back(-(0.1 * k - 5.03) * (0.1 * k - 5.03));
  }
  const auto peaks = find_peaks(ts, vs);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].t == doctest::Approx(5.03).epsilon(1e-12));
  CHECK(peaks[0].value == doctest::Approx(0.0));

  std::vector<double> flat(ts.size(), 3.0);
  CHECK(find_peaks(ts, flat).empty());
  std::vector<double> bumpy = vs;
  bumpy[10] += 1e-12;  // far below 1e-6 of the range
  CHECK(find_peaks(ts, bumpy).size() == 1);
  CHECK_THROWS_AS(find_peaks({0.0, 1.0}, {1.0}), ContractViolation);
}

TEST_CASE("constant trajectory at E1 converges to E1") {
  const ModelParams p = preset("fig1");
  const Equilibrium e1 = solve_infection_free(p);
  const Trajectory t = integrate(p, History::constant(e1.state), 50.0);
  const TrajectoryVerdict v = detect_outcome(t, {e1});
  CHECK(v.outcome == Outcome::ConvergedTo);
  CHECK(v.equilibrium->kind == EquilibriumKind::InfectionFree);
  CHECK(v.candidate_index == 0u);
  CHECK(v.max_deviation < 1e-12);
}

TEST_CASE("fig3 at tau = 1 from E2 + 10% converges to E2") {
  ModelParams p = preset("fig3");
  p.tau = 1.0;
  const Equilibrium e2 = *solve_infected(p);
  const State start{1.1 * e2.state.t_cells, 1.1 * e2.state.i_cells, 1.1 * e2.state.virions};
  const Trajectory t = integrate(p, History::constant(start), 2000.0);
  const TrajectoryVerdict v = detect_outcome(t, {solve_infection_free(p), e2});
  CHECK(v.outcome == Outcome::ConvergedTo);
  REQUIRE(v.equilibrium.has_value());
  CHECK(v.equilibrium->kind == EquilibriumKind::Infected);
}

TEST_CASE("fig5 at tau = 3 oscillates") {
  ModelParams p = preset("fig5");
  p.tau = 3.0;
  const Equilibrium e2 = *solve_infected(p);
  const State start{1.1 * e2.state.t_cells, 1.1 * e2.state.i_cells, 1.1 * e2.state.virions};
  const Trajectory t = integrate(p, History::constant(start), 1000.0);
  const TrajectoryVerdict v = detect_outcome(t, fig5_candidates(p));
  CHECK(v.outcome == Outcome::SustainedOscillation);
  CHECK(v.period > 0.0);
  CHECK(v.amplitude.virions > 0.0);
  CHECK(v.peaks.size() >= 4);
}

TEST_CASE("short windows are Undecided, not coerced") {
  ModelParams p = preset("fig5");
  p.tau = 3.0;
  const Equilibrium e2 = *solve_infected(p);
  const State start{1.1 * e2.state.t_cells, 1.1 * e2.state.i_cells, 1.1 * e2.state.virions};
  const Trajectory t = integrate(p, History::constant(start), 60.0);
  const TrajectoryVerdict v = detect_outcome(t, fig5_candidates(p));
  CHECK(v.outcome == Outcome::Undecided);
  CHECK_FALSE(v.note.empty());
}

TEST_CASE("a decaying oscillation outside the band is not sustained") {
  std::vector<double> ts;
  std::vector<State> xs;
  std::vector<Rates> ds;
  for (int k = 0; k <= 8000; ++k) {
    const double t = 0.05 * k;
    const double env = std::exp(-0.01 * t);
    ts.push_back(t);
    xs.push_back({1.0, 1.0, 50.0 + 10.0 * env * std::sin(t)});
    ds.push_back({0.0, 0.0, 10.0 * env * (std::cos(t) - 0.01 * std::sin(t))});
  }
  const Trajectory traj(preset("fig5"), History::constant(xs.front()), ts, xs, ds, {});
  const TrajectoryVerdict v = detect_outcome(traj, {});
  // Per-period amplitude ratio exp(-0.02 pi) = 0.939 < 0.95.
  CHECK(v.outcome == Outcome::Undecided);
  CHECK(v.note.find("amplitude") != std::string::npos);
}

TEST_CASE("detect_outcome contract errors") {
  const Trajectory empty(preset("fig5"), History::constant({1, 1, 1}), {}, {}, {}, {});
  CHECK_THROWS_AS(detect_outcome(empty, {}), ContractViolation);
  DetectionSettings bad;
  bad.settle_tol = 0.0;
  CHECK_THROWS_AS(detect_outcome(sinusoid(10.0), {}, bad), ContractViolation);
  bad = {};
  bad.window_fraction = 1.5;
  CHECK_THROWS_AS(detect_outcome(sinusoid(10.0), {}, bad), ContractViolation);
}

TEST_CASE("permanence bounds") {
  const ModelParams p = preset("fig5");
  const PermanenceBounds b = permanence_bounds(p);
  CHECK(b.t_upper == infection_free_t0(p));
  const double mi = (0.95 * 1200.0 / 2.0 + 0.01) / 0.02;
  CHECK(b.w_upper == doctest::Approx(mi).epsilon(1e-15));
  CHECK(b.i_upper == doctest::Approx(mi).epsilon(1e-15));
  CHECK(b.v_upper == doctest::Approx(p.p * mi / p.c).epsilon(1e-15));
  REQUIRE(b.t_lower.has_value());
  CHECK(*b.t_lower > 0.0);
  const double k = p.a - p.d - p.b / p.alpha - p.a * mi / p.t_max;
  const double expected =
      p.t_max / (2.0 * p.a) * (k + std::sqrt(k * k + 4.0 * p.a * p.s / p.t_max));
  CHECK(*b.t_lower == doctest::Approx(expected).epsilon(1e-6));

  ModelParams mass_action = p;
  mass_action.alpha = 0.0;
  CHECK_FALSE(permanence_bounds(mass_action).t_lower.has_value());
}

TEST_CASE("permanence checks on fig5 runs") {
  for (double tau : {0.1, 3.0}) {
    ModelParams p = preset("fig5");
    p.tau = tau;
    const Equilibrium e2 = *solve_infected(p);
    const State start{1.1 * e2.state.t_cells, 1.1 * e2.state.i_cells, 1.1 * e2.state.virions};
    const Trajectory t = integrate(p, History::constant(start), 1000.0);
    const PermanenceCheck check = check_permanence(t, permanence_bounds(p));
    CHECK(check.all_passed());
    for (const auto& c : check.checks)
      CHECK(c.status == CheckStatus::Pass);
    CHECK(w_limsup(t) <= permanence_bounds(p).w_upper * 1.01);
  }
}

TEST_CASE("lower bounds are inapplicable when R0 < 1") {
  ModelParams p = preset("fig1");
  const Trajectory t = integrate(p, History::constant({7e6, 1e3, 1e3}), 200.0);
  const PermanenceCheck check = check_permanence(t, permanence_bounds(p));
  for (const auto& c : check.checks) {
    if (c.name.find("positive") != std::string::npos || c.name == "T_lower")
      CHECK(c.status == CheckStatus::Inapplicable);
    else
      CHECK(c.status == CheckStatus::Pass);
  }
}

TEST_CASE("peaks CSV") {
  const std::string text = peaks_csv({{1.5, 2.0}, {3.0, 4.25}});
  CHECK(text == "t_peak,V_peak\n1.5,2\n3,4.25\n");
}

} // TEST_SUITE
