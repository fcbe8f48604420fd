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

// Randomized property checks. Every generator is a seeded std::mt19937_64,
// so failures reproduce exactly; the seed is part of each test's name.
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "viraldyn/dde.hpp"
#include "viraldyn/equilibria.hpp"
#include "viraldyn/linearization.hpp"
#include "viraldyn/params_io.hpp"
#include "viraldyn/polynomial.hpp"

using namespace viraldyn;
using cd = std::complex<double>;

namespace {

constexpr int kTrials = 200;

ModelParams draw(std::mt19937_64& rng) {
  std::bernoulli_distribution which(0.5);
  return oracle::random_params(rng, preset(which(rng) ? "fig5" : "fig1"), 3.0);
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("R0 monotonicity signs (seed 101)") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < kTrials; ++k) {
    const ModelParams p = draw(rng);
    const double base = r0(p);
    auto bumped = [&](Param which) {
      ModelParams q = p;
      set_param(q, which, get_param(p, which) * 1.01);
      return r0(q);
    };
    // R0 is proportional to 1/mu, and the logistic term makes it negative
    // when T0 exceeds Tmax, so a larger mu pulls R0 toward zero.
    CHECK(std::abs(bumped(Param::mu)) < std::abs(base));
    CHECK(bumped(Param::c) < base);
    CHECK(bumped(Param::b) > base);
    CHECK(bumped(Param::p) > base);
  }
}

TEST_CASE("T0 solves its quadratic (seed 102)") {
  std::mt19937_64 rng(102);
  for (int k = 0; k < kTrials; ++k) {
    const ModelParams p = draw(rng);
    const double t = infection_free_t0(p);
    const double terms = p.a / p.t_max * t * t + std::abs((p.d - p.a) * t) + p.s;
    CHECK(std::abs(p.s - p.d * t + p.a * t * (1.0 - t / p.t_max)) <= 1e-12 * terms);
    CHECK(oracle::rel_err(t, oracle::t0(p)) < 1e-12);
  }
}

TEST_CASE("F decreasing and E2 consistent (seed 103)") {
  std::mt19937_64 rng(103);
  int with_e2 = 0;
  for (int k = 0; k < kTrials; ++k) {
    const ModelParams p = draw(rng);
    double prev = big_f(p, 0.0);
    for (double i2 = p.t_max * 1e-6; i2 < p.t_max * 10.0; i2 *= 3.0) {
      const double cur = big_f(p, i2);
      CHECK(cur < prev);
      prev = cur;
    }
    const auto e2 = solve_infected(p);
    CHECK(e2.has_value() == (r0(p) > 1.0));
    if (!e2)
      continue;
    ++with_e2;
    CHECK(equilibrium_residual(p, e2->state) < 1e-8);
    CHECK(oracle::rel_err(e2->state.virions, p.p * e2->state.i_cells / p.c) < 1e-10);
    CHECK(std::abs(big_f(p, e2->state.i_cells) - 1.0) < 1e-6);
  }
  CHECK(with_e2 > 20);
}

TEST_CASE("characteristic coefficients vs dense determinant (seed 104)") {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> re(-1.0, 0.5), im(-2.0, 2.0), tu(0.0, 4.0);
  for (int k = 0; k < kTrials / 4; ++k) {
    const ModelParams p = draw(rng);
    auto e2 = solve_infected(p);
    if (!e2)
      continue;
    const JacobianPair jp = jacobians(p, *e2);
    const CharCoeffs cc = char_coeffs(p, *e2);
    for (int j = 0; j < 20; ++j) {
      const cd lambda(re(rng), im(rng));
      const double tau = tu(rng);
      const cd ref = -oracle::char_det(jp, lambda, tau);
      CHECK(std::abs(cc.evaluate(lambda, tau) - ref) <= 1e-8 * cc.magnitude(lambda));
    }
  }
}

TEST_CASE("H1 agrees with companion eigenvalues at tau = 0 (seed 105)") {
  std::mt19937_64 rng(105);
  int seen = 0;
  for (int k = 0; k < kTrials; ++k) {
    const ModelParams p = draw(rng);
    auto e2 = solve_infected(p);
    if (!e2)
      continue;
    const CharCoeffs cc = char_coeffs(p, *e2);
    const auto roots = oracle::companion_roots({cc.a2, cc.a1 + cc.b1, cc.a0 + cc.b0});
    const double worst = std::max_element(roots.begin(), roots.end(), [](cd x, cd y) {
                           return x.real() < y.real();
                         })->real();
    const double scale = std::abs(roots[0]) + std::abs(roots[1]) + std::abs(roots[2]);
    if (std::abs(worst) < 1e-9 * scale)
      continue;  // too close to the boundary to call either way
    CHECK(routh_hurwitz_h1(cc) == (worst < 0.0));
    ++seen;
  }
  CHECK(seen > 20);
}

TEST_CASE("E1 with R0 < 1 has no crossing (seed 106)") {
  std::mt19937_64 rng(106);
  int seen = 0;
  for (int k = 0; k < kTrials; ++k) {
    const ModelParams p = draw(rng);
    if (r0(p) >= 1.0)
      continue;
    ++seen;
    const CrossingAnalysis x = crossing_analysis(char_coeffs(p, solve_infection_free(p)));
    CHECK(x.positive_z_roots.empty());
  }
  CHECK(seen > 20);
}

TEST_CASE("crossings: modulus condition, tau0 residual, transversality (seed 107)") {
  std::mt19937_64 rng(107);
  int crossings = 0;
  for (int k = 0; k < kTrials; ++k) {
    const ModelParams p = draw(rng);
    auto e2 = solve_infected(p);
    if (!e2)
      continue;
    const CharCoeffs cc = char_coeffs(p, *e2);
    const CrossingAnalysis x = crossing_analysis(cc);
    for (double z : x.positive_z_roots) {
      const cd lambda(0.0, std::sqrt(z));
      const double lhs = std::abs(cc.instantaneous(lambda));
      const double rhs = std::abs(cc.delayed(lambda));
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(cc.magnitude(lambda), 1e-300));
    }
    for (const Crossing& c : x.crossings) {
      const cd lambda(0.0, c.omega);
      CHECK(std::abs(cc.evaluate(lambda, c.tau)) <= 1e-8 * cc.magnitude(lambda));
    }
    if (x.largest_root_transversality) {
      CHECK(*x.largest_root_transversality > 0);
      ++crossings;
    }
    if (x.tau0) {
      CHECK(*x.tau0 == std::min_element(x.crossings.begin(), x.crossings.end(),
                                        [](const Crossing& a, const Crossing& b) {
                                          return a.tau < b.tau;
                                        })->tau);
    }
  }
  CHECK(crossings > 10);
}

TEST_CASE("cubic roots vs companion matrix (seed 108)") {
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const auto roots = real_roots_cubic(a, b, c);
    std::vector<double> ref;
    for (cd r : oracle::companion_roots({a, b, c}))
      if (std::abs(r.imag()) < 1e-7 * (1.0 + std::abs(r)))
        ref.push_back(r.real());
    std::sort(ref.begin(), ref.end());
    REQUIRE(roots.size() == ref.size());
    for (std::size_t j = 0; j < ref.size(); ++j)
      CHECK(std::abs(roots[j].value - ref[j]) <= 1e-9 * std::max(1.0, std::abs(ref[j])));
  }
}

TEST_CASE("quadratic roots vs companion matrix (seed 109)") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const double b = u(rng), c = u(rng);
    const auto roots = real_roots_quadratic(b, c);
    std::vector<double> ref;
    for (cd r : oracle::companion_roots({b, c}))
      if (r.imag() == 0.0)
        ref.push_back(r.real());
    std::sort(ref.begin(), ref.end());
    REQUIRE(roots.size() == ref.size());
    for (std::size_t j = 0; j < ref.size(); ++j)
      CHECK(std::abs(roots[j].value - ref[j]) <= 1e-9 * std::max(1.0, std::abs(ref[j])));
  }
}

TEST_CASE("Hermite dense output is exact on random cubics (seed 110)") {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> u(-3.0, 3.0), step(0.01, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double c3 = u(rng), c2 = u(rng), c1 = u(rng), c0 = u(rng);
    auto f = [&](double t) { return ((c3 * t + c2) * t + c1) * t + c0; };
    auto df = [&](double t) { return (3.0 * c3 * t + 2.0 * c2) * t + c1; };
    const double h = step(rng);
    std::vector<double> ts;
    std::vector<State> xs;
    std::vector<Rates> ds;
    for (int j = 0; j <= 8; ++j) {
      ts.push_back(j * h);
      xs.push_back({f(j * h), 0.0, 0.0});
      ds.push_back({df(j * h), 0.0, 0.0});
    }
    const Trajectory traj(preset("fig5"), History::constant(xs[0]), ts, xs, ds, {});
    std::uniform_real_distribution<double> where(0.0, 8.0 * h);
    for (int j = 0; j < 20; ++j) {
      const double t = where(rng);
      const double scale = std::abs(c3) * t * t * t + std::abs(c2) * t * t + std::abs(c1) * t + std::abs(c0);
      CHECK(std::abs(dense_eval(traj, t).t_cells - f(t)) <= 1e-12 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("parameter text round trip (seed 111)") {
  std::mt19937_64 rng(111);
  for (int k = 0; k < kTrials; ++k) {
    const ModelParams p = draw(rng);
    CHECK(parse_params(format_params(p)) == p);
  }
}

TEST_CASE("positivity, determinism and CSV round trip on random runs (seed 112)") {
  std::mt19937_64 rng(112);
  std::uniform_real_distribution<double> frac(0.0, 2.0), tu(0.0, 5.0);
  for (int k = 0; k < 12; ++k) {
    ModelParams p = oracle::random_params(rng, preset("fig5"), 2.0);
    p.tau = tu(rng);
    const double t0 = infection_free_t0(p);
    const History hist = History::constant({t0 * frac(rng), t0 * frac(rng) * 0.1, t0 * frac(rng)});
    const Trajectory a = integrate(p, hist, 100.0);
    const Trajectory b = integrate(p, hist, 100.0);
    CHECK(a.states() == b.states());
    CHECK(a.diagnostics().positivity_violations == 0);
    const std::string text = trajectory_csv(a);
    const TrajectorySamples back = parse_trajectory_csv(text);
    CHECK(back.states == a.states());
    CHECK(back.times == a.times());
  }
}

} // TEST_SUITE
