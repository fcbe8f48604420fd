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
#include <limits>

#include "doctest.h"
#include "viraldyn/dde.hpp"
#include "viraldyn/equilibria.hpp"
#include "viraldyn/error.hpp"
#include "viraldyn/params_io.hpp"

using namespace viraldyn;

namespace {

double distance(const State& x, const State& y) {
  return max_norm(State{x.t_cells - y.t_cells, x.i_cells - y.i_cells, x.virions - y.virions});
}

// Error at t_end of step h against a reference run with step h/4.
double self_convergence_ratio(ModelParams p, double t_end, double h) {
  const History hist = History::constant({30.0, 80.0, 300.0});
  const State ref = integrate(p, hist, t_end, h / 4.0).states().back();
  const double e1 = distance(integrate(p, hist, t_end, h).states().back(), ref);
  const double e2 = distance(integrate(p, hist, t_end, h / 2.0).states().back(), ref);
  return e1 / e2;
}

} // namespace

TEST_SUITE("dde") {

TEST_CASE("default step") {
  ModelParams p = preset("fig5");
  p.tau = 4.0;
  // h_cap = 0.2 / 2.4; tau / 40 = 0.1 is above it, so the step is tau / 48.
  CHECK(default_step(p, 100.0) == doctest::Approx(4.0 / 48.0).epsilon(1e-15));
  p.tau = 1.0;
  CHECK(default_step(p, 100.0) == doctest::Approx(1.0 / 40.0).epsilon(1e-15));
  p.tau = 0.0;
  CHECK(default_step(p, 100.0) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(default_step(p, 1e5) == doctest::Approx(0.2 / 2.4).epsilon(1e-15));
}

TEST_CASE("step is shrunk to divide tau") {
  ModelParams p = preset("fig5");
  p.tau = 1.0;
  const Trajectory t = integrate(p, History::constant({20, 100, 400}), 5.0, 0.3);
  CHECK(t.diagnostics().step == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(t.times()[4] == 1.0);
  CHECK(t.end_time() >= 5.0);
}

TEST_CASE("constant E2 history stays at E2") {
  for (double tau : {0.0, 0.1, 3.0}) {
    ModelParams p = preset("fig5");
    p.tau = tau;
    const Equilibrium e2 = *solve_infected(p);
    const Trajectory t = integrate(p, History::constant(e2.state), std::max(10.0 * tau, 1.0));
    for (const State& x : t.states())
      CHECK(distance(x, e2.state) <= 1e-9 * max_norm(e2.state));
  }
}

TEST_CASE("constant E1 history stays at E1") {
  ModelParams p = preset("fig1");
  p.tau = 1.0;
  const Equilibrium e1 = solve_infection_free(p);
  const Trajectory t = integrate(p, History::constant(e1.state), 10.0);
  for (const State& x : t.states())
    CHECK(distance(x, e1.state) <= 1e-9 * max_norm(e1.state));
}

TEST_CASE("fig1 trajectories approach E1") {
  for (double tau : {0.0, 1.0, 5.0}) {
    ModelParams p = preset("fig1");
    p.tau = tau;
    const State e1 = solve_infection_free(p).state;
    const Trajectory t = integrate(p, History::constant({7e6, 1e3, 1e3}), 500.0);
    const double early = distance(dense_eval(t, 250.0), e1);
    const double late = distance(t.states().back(), e1);
    CHECK(late < early);
    CHECK(late < 1e-3 * max_norm(e1));
  }
}

TEST_CASE("fourth-order self-convergence without delay") {
  ModelParams p = preset("fig5");
  p.tau = 0.0;
  CHECK(self_convergence_ratio(p, 20.0, 0.1) >= 7.0);
}

TEST_CASE("self-convergence with delay") {
  ModelParams p = preset("fig5");
  p.tau = 1.0;
  CHECK(self_convergence_ratio(p, 20.0, 0.1) >= 5.0);
}

TEST_CASE("dense output is bitwise at knots and covers [-tau, t_end]") {
  ModelParams p = preset("fig5");
  p.tau = 0.5;
  const Trajectory t = integrate(p, History::constant({20, 100, 400}), 10.0);
  for (std::size_t k = 0; k < t.size(); k += 7)
    CHECK(dense_eval(t, t.times()[k]) == t.states()[k]);
  CHECK(dense_eval(t, -0.25) == State{20, 100, 400});
  CHECK_THROWS_AS(dense_eval(t, -0.6), RangeError);
  CHECK_THROWS_AS(dense_eval(t, t.end_time() + 1e-9), RangeError);
}

TEST_CASE("Hermite dense output reproduces cubics") {
  auto f = [](double t) { return 2.0 * t * t * t - 3.0 * t * t + t + 5.0; };
  auto df = [](double t) { return 6.0 * t * t - 6.0 * t + 1.0; };
  std::vector<double> ts;
  std::vector<State> xs;
  std::vector<Rates> ds;
  for (int k = 0; k <= 10; ++k) {
    const double t = 0.3 * k;
    ts.push_back(t);
    xs.push_back({f(t), 2.0 * t + 1.0, 1.0});
    ds.push_back({df(t), 2.0, 0.0});
  }
  const Trajectory traj(preset("fig5"), History::constant({5, 1, 1}), ts, xs, ds, {});
  for (double t = 0.01; t < 3.0; t += 0.037) {
    const State x = dense_eval(traj, t);
    CHECK(x.t_cells == doctest::Approx(f(t)).epsilon(1e-12));
    CHECK(x.i_cells == doctest::Approx(2.0 * t + 1.0).epsilon(1e-12));
    CHECK(x.virions == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("interpolation error shrinks at fourth order") {
  ModelParams p = preset("fig5");
  p.tau = 1.0;
  const History hist = History::constant({30.0, 80.0, 300.0});
  const Trajectory fine = integrate(p, hist, 10.0, 1.0 / 256.0);
  auto mid_error = [&](double h) {
    const Trajectory coarse = integrate(p, hist, 10.0, h);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < coarse.size(); ++k) {
      const double t = 0.5 * (coarse.times()[k] + coarse.times()[k + 1]);
      if (t > 10.0)
        break;
      worst = std::max(worst, distance(dense_eval(coarse, t), dense_eval(fine, t)));
    }
    return worst;
  };
  CHECK(mid_error(0.125) / mid_error(0.0625) >= 8.0);
}

TEST_CASE("bitwise determinism") {
  ModelParams p = preset("fig5");
  p.tau = 3.0;
  const History hist = History::constant({21, 117, 489});
  const Trajectory a = integrate(p, hist, 200.0);
  const Trajectory b = integrate(p, hist, 200.0);
  CHECK(a.times() == b.times());
  CHECK(a.states() == b.states());
  CHECK(trajectory_csv(a) == trajectory_csv(b));
}

TEST_CASE("contract violations") {
  ModelParams p = preset("fig5");
  p.tau = 0.5;
  const History hist = History::constant({20, 100, 400});
  CHECK_THROWS_AS(integrate(p, hist, 10.0, 0.6), ContractViolation);
  CHECK_THROWS_AS(integrate(p, hist, 0.0), ContractViolation);
  CHECK_THROWS_AS(integrate(p, hist, -1.0), ContractViolation);
  CHECK_THROWS_AS(integrate(p, History::constant({-1, 1, 1}), 1.0), ContractViolation);
  const History short_hist = History::sampled({-0.2, 0.0}, {{20, 100, 400}, {20, 100, 400}});
  CHECK_THROWS_AS(integrate(p, short_hist, 1.0), ContractViolation);
  const History late = History::sampled({-1.0, -0.1}, {{20, 100, 400}, {20, 100, 400}});
  CHECK_THROWS_AS(integrate(p, late, 1.0), ContractViolation);
  CHECK_THROWS_AS(History::sampled({0.0, 0.0}, {{1, 1, 1}, {1, 1, 1}}), InvalidInput);
  CHECK_THROWS_AS(History::sampled({0.0}, {{1, 1, 1}}), InvalidInput);
}

TEST_CASE("divergence raises BlowUp with the last good time") {
  ModelParams p = preset("fig5");
  p.tau = 0.0;
  try {
    integrate(p, History::constant({20, 100, 400}), 1e6, 50.0);
    FAIL("expected BlowUp");
  } catch (const BlowUp& e) {
    CHECK(e.last_good_time() >= 0.0);
    CHECK(e.last_good_time() < 1e6);
  }
}

TEST_CASE("sampled history matches an equivalent constant history") {
  ModelParams p = preset("fig5");
  p.tau = 1.0;
  const State x{25.0, 90.0, 380.0};
  const History flat = History::sampled({-1.0, -0.5, 0.0}, {x, x, x});
  const Trajectory a = integrate(p, flat, 20.0);
  const Trajectory b = integrate(p, History::constant(x), 20.0);
  CHECK(a.states() == b.states());
}

TEST_CASE("sampled history interpolates smooth data") {
  std::vector<double> ts;
  std::vector<State> xs;
  for (int k = 0; k <= 40; ++k) {
    const double t = -2.0 + 0.05 * k;
    ts.push_back(t);
    xs.push_back({std::exp(0.3 * t), 1.0 + t * t, 2.0});
  }
  const History h = History::sampled(ts, xs);
  CHECK(h.at(-2.0) == xs.front());
  CHECK(h.initial() == xs.back());
  CHECK(h.at(-0.725).t_cells == doctest::Approx(std::exp(0.3 * -0.725)).epsilon(1e-6));
  CHECK(h.at(-1.33).i_cells == doctest::Approx(1.0 + 1.33 * 1.33).epsilon(1e-4));
  CHECK_THROWS_AS(h.at(-2.1), RangeError);
}

TEST_CASE("positivity holds on the preset runs") {
  for (const auto& name : preset_names()) {
    ModelParams p = preset(name);
    const Trajectory t = integrate(p, History::constant(solve_infection_free(p).state) , 50.0);
    CHECK(t.diagnostics().positivity_violations == 0);
    for (const State& x : t.states())
      CHECK((x.t_cells >= 0.0 && x.i_cells >= 0.0 && x.virions >= 0.0));
  }
}

TEST_CASE("trajectory CSV round trips") {
  ModelParams p = preset("fig5");
  p.tau = 0.3;
  const Trajectory t = integrate(p, History::constant({20, 100, 400}), 5.0);
  const std::string text = trajectory_csv(t);
  const TrajectorySamples back = parse_trajectory_csv(text);
  CHECK(back.times == t.times());
  CHECK(back.states == t.states());
  CHECK(text.rfind("t,T,I,V\n", 0) == 0);
  CHECK_THROWS_AS(parse_trajectory_csv("x,y\n1,2\n"), InvalidInput);
  CHECK_THROWS_AS(write_trajectory_csv(t, "/nonexistent/dir/t.csv"), IoError);
}

} // TEST_SUITE
