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

#include "viraldyn/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "viraldyn/error.hpp"
#include "viraldyn/polynomial.hpp"

namespace viraldyn {

namespace {

// Polynomial in (lambda, z) with z standing for e^{-lambda tau};
// coef[i][j] multiplies lambda^i z^j.
struct Bivariate {
  std::array<std::array<double, 4>, 4> coef{};

  Bivariate operator*(const Bivariate& o) const {
    Bivariate r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (coef[i][j] == 0.0)
          continue;
        for (int k = 0; i + k < 4; ++k)
          for (int l = 0; j + l < 4; ++l)
            r.coef[i + k][j + l] += coef[i][j] * o.coef[k][l];
      }
    return r;
  }
  Bivariate& operator+=(const Bivariate& o) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        coef[i][j] += o.coef[i][j];
    return *this;
  }
  Bivariate operator+(const Bivariate& o) const {
    Bivariate r = *this;
    r += o;
    return r;
  }
  Bivariate operator-() const {
    Bivariate r = *this;
    for (auto& row : r.coef)
      for (auto& x : row)
        x = -x;
    return r;
  }
};

// Entry (r, c) of lambda I - j_now - z j_lag.
Bivariate char_entry(const JacobianPair& jp, int r, int c) {
  Bivariate e;
  e.coef[1][0] = (r == c) ? 1.0 : 0.0;
  e.coef[0][0] = -jp.j_now[r][c];
  e.coef[0][1] = -jp.j_lag[r][c];
  return e;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

std::complex<double> CharCoeffs::instantaneous(std::complex<double> l) const {
  if (degree == 2)
    return (l + a1) * l + a0;
  return ((l + a2) * l + a1) * l + a0;
}

std::complex<double> CharCoeffs::delayed(std::complex<double> l) const { return b1 * l + b0; }

std::complex<double> CharCoeffs::evaluate(std::complex<double> l, double tau) const {
  return instantaneous(l) + delayed(l) * std::exp(-l * tau);
}

double CharCoeffs::magnitude(std::complex<double> l) const {
  const double m = std::abs(l);
  double lead = (degree == 2) ? m * m : m * m * m + std::abs(a2) * m * m;
  return lead + std::abs(a1) * m + std::abs(a0) + std::abs(b1) * m + std::abs(b0);
}

JacobianPair jacobians(const ModelParams& pr, const Equilibrium& eq) {
  const auto& [t, i, v] = eq.state;
  const double sat = 1.0 + pr.alpha * v;
  JacobianPair jp;
  jp.j_now[0] = {pr.a - pr.d - pr.a * (2.0 * t + i) / pr.t_max - pr.b * v / sat,
                 -pr.a * t / pr.t_max, -pr.b * t / (sat * sat)};
  jp.j_now[1] = {-pr.a * i / pr.t_max, pr.a - pr.mu - pr.a * (t + 2.0 * i) / pr.t_max, 0.0};
  jp.j_now[2] = {0.0, pr.p, -pr.c};
  jp.j_lag[1] = {pr.b * v / sat, 0.0, pr.b * t / (sat * sat)};
  return jp;
}

CharCoeffs char_coeffs(const ModelParams& params, const Equilibrium& eq) {
  const JacobianPair jp = jacobians(params, eq);

  if (eq.kind == EquilibriumKind::InfectionFree) {
    // With I = V = 0 the T column is (lambda - j00, 0, 0)^T, so the
    // characteristic function factors through the (I, V) block.
    if (jp.j_now[1][0] != 0.0 || jp.j_lag[1][0] != 0.0)
      throw NumericalFailure("char_coeffs: E1 block structure violated");
    const Bivariate det = char_entry(jp, 1, 1) * char_entry(jp, 2, 2) +
                          -(char_entry(jp, 1, 2) * char_entry(jp, 2, 1));
    CharCoeffs cc;
    cc.degree = 2;
    cc.a1 = det.coef[1][0];
    cc.a0 = det.coef[0][0];
    cc.b1 = det.coef[1][1];
    cc.b0 = det.coef[0][1];
    return cc;
  }

  // Leibniz expansion over the six permutations of {0, 1, 2}.
  constexpr std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  constexpr std::array<int, 6> parity = {1, -1, -1, 1, 1, -1};
  Bivariate det;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    Bivariate term = char_entry(jp, 0, perms[k][0]) * char_entry(jp, 1, perms[k][1]) *
                     char_entry(jp, 2, perms[k][2]);
    det += parity[k] > 0 ? term : -term;
  }
  // j_lag lives in a single row, so no e^{-2 lambda tau} terms, and the
  // delayed part is at most linear in lambda.
  for (int i = 0; i < 4; ++i)
    for (int j = 2; j < 4; ++j)
      if (det.coef[i][j] != 0.0)
        throw NumericalFailure("char_coeffs: unexpected higher-order delay term");
  if (det.coef[2][1] != 0.0 || det.coef[3][1] != 0.0 || det.coef[3][0] != 1.0)
    throw NumericalFailure("char_coeffs: unexpected characteristic structure");

  CharCoeffs cc;
  cc.degree = 3;
  cc.a2 = det.coef[2][0];
  cc.a1 = det.coef[1][0];
  cc.a0 = det.coef[0][0];
  cc.b1 = det.coef[1][1];
  cc.b0 = det.coef[0][1];
  return cc;
}

double infection_free_t_eigenvalue(const ModelParams& pr) {
  const double t0 = infection_free_t0(pr);
  return -(pr.s / t0 + pr.a * t0 / pr.t_max);
}

bool routh_hurwitz_h1(const CharCoeffs& cc) {
  if (cc.degree != 3)
    throw ContractViolation("routh_hurwitz_h1 needs the cubic characteristic function");
  return cc.a0 + cc.b0 > 0.0 && cc.a2 * (cc.a1 + cc.b1) - (cc.a0 + cc.b0) > 0.0;
}

bool stable_at_tau_zero(const CharCoeffs& cc) {
  if (cc.degree == 3)
    return routh_hurwitz_h1(cc);
  return cc.a1 + cc.b1 > 0.0 && cc.a0 + cc.b0 > 0.0;
}

double hopf_tau0(const CharCoeffs& cc, double omega0) {
  if (!(omega0 > 0.0))
    throw ContractViolation("hopf_tau0 needs omega0 > 0");
  const double w = omega0;
  const double w2 = w * w;
  // P(i w) = re_p + i im_p, Q(i w) = b0 + i b1 w.
  const double re_p = cc.a0 - (cc.degree == 3 ? cc.a2 * w2 : w2);
  const double im_p = cc.a1 * w - (cc.degree == 3 ? w2 * w : 0.0);
  const double q2 = cc.b0 * cc.b0 + cc.b1 * cc.b1 * w2;
  if (!(q2 > 0.0))
    throw NumericalFailure("hopf_tau0: delayed part vanishes at i*omega0");
  // e^{i w tau} = -conj(P) Q / |Q|^2 on the crossing.
  double cos_arg = -(re_p * cc.b0 + im_p * cc.b1 * w) / q2;
  const double sin_arg = -(re_p * cc.b1 * w - im_p * cc.b0) / q2;
  if (std::abs(cos_arg) > 1.0 + 1e-9)
    throw NumericalFailure("hopf_tau0: arccos argument " + std::to_string(cos_arg) +
                           " outside [-1, 1]");
  cos_arg = std::clamp(cos_arg, -1.0, 1.0);
  double theta = std::acos(cos_arg);
  if (sin_arg < 0.0)
    theta = 2.0 * std::numbers::pi - theta;
  return theta / w;
}

CrossingAnalysis crossing_analysis(const CharCoeffs& cc) {
  CrossingAnalysis out;
  out.degree = cc.degree;
  std::vector<RealRoot> roots;
  if (cc.degree == 3) {
    out.A = cc.a2 * cc.a2 - 2.0 * cc.a1;
    out.B = cc.a1 * cc.a1 - 2.0 * cc.a2 * cc.a0 - cc.b1 * cc.b1;
    out.C = cc.a0 * cc.a0 - cc.b0 * cc.b0;
    roots = real_roots_cubic(out.A, out.B, out.C);
  } else {
    out.A = 0.0;
    out.B = cc.a1 * cc.a1 - 2.0 * cc.a0 - cc.b1 * cc.b1;
    out.C = cc.a0 * cc.a0 - cc.b0 * cc.b0;
    roots = real_roots_quadratic(out.B, out.C);
  }

  for (const RealRoot& r : roots) {
    if (!(r.value > 0.0))
      continue;
    out.positive_z_roots.push_back(r.value);
    if (!r.simple)
      continue;
    Crossing x;
    x.z = r.value;
    x.omega = std::sqrt(r.value);
    x.tau = hopf_tau0(cc, x.omega);
    x.transversality_sign = sign_of(r.derivative);
    out.crossings.push_back(x);
  }
  if (!out.crossings.empty()) {
    const auto first = std::min_element(
        out.crossings.begin(), out.crossings.end(),
        [](const Crossing& x, const Crossing& y) { return x.tau < y.tau; });
    out.omega0 = first->omega;
    out.tau0 = first->tau;
    out.transversality_sign = first->transversality_sign;
    out.largest_root_transversality = out.crossings.back().transversality_sign;
  }
  return out;
}

std::string to_string(Classification c) {
  switch (c) {
  case Classification::StableAllTau: return "StableAllTau";
  case Classification::StableBelowTau0: return "StableBelowTau0";
  case Classification::UnstableAtTauZero: return "UnstableAtTauZero";
  case Classification::Unstable: return "Unstable";
  }
  return "?";
}

std::string to_string(GlobalFlag f) {
  switch (f) {
  case GlobalFlag::E1_GAS: return "E1_GAS";
  case GlobalFlag::E2_GAS_condition: return "E2_GAS_condition";
  case GlobalFlag::noncytopathic_corollary: return "noncytopathic_corollary";
  }
  return "?";
}

DelayLengthEstimate delay_length_estimate(const CharCoeffs& cc) {
  if (cc.degree != 3 || !(cc.a2 > 0.0))
    throw ContractViolation("delay_length_estimate needs a cubic with a2 > 0");
  DelayLengthEstimate est;
  const double abs_b1 = std::abs(cc.b1);
  est.v_plus = (abs_b1 + std::sqrt(cc.b1 * cc.b1 + 4.0 * cc.a2 * (std::abs(cc.a0) + std::abs(cc.b0)))) /
               (2.0 * cc.a2);
  const double v2 = est.v_plus * est.v_plus;
  // a2 b1 (not a1 b1) keeps every term homogeneous under time rescaling.
  est.k1 = 0.5 * std::abs(cc.b0 - cc.a2 * cc.b1) * v2;
  est.k2 = abs_b1 * v2 + std::abs(cc.a2 * cc.b0);
  est.k3 = cc.a2 * cc.a1 + cc.a2 * cc.b1 - cc.a0 - cc.b0;
  if (!(est.k3 > 0.0)) {
    est.note = "K3 <= 0: no delay range certified";
  } else if (est.k1 == 0.0) {
    est.note = "K1 == 0: degenerate estimate";
  } else {
    est.tau_plus = (-est.k2 + std::sqrt(est.k2 * est.k2 + 4.0 * est.k1 * est.k3)) / (2.0 * est.k1);
  }
  return est;
}

StabilityReport classify(const ModelParams& params, const Equilibrium& eq) {
  StabilityReport rep;
  rep.equilibrium = eq;
  rep.tau = params.tau;
  rep.coeffs = char_coeffs(params, eq);
  rep.routh_hurwitz_h1 = stable_at_tau_zero(rep.coeffs);
  rep.crossing = crossing_analysis(rep.coeffs);
  const double r = eq.r0_at_params;

  if (eq.kind == EquilibriumKind::InfectionFree) {
    if (r <= 1.0) {
      rep.classification = Classification::StableAllTau;
      rep.global_flags.push_back(GlobalFlag::E1_GAS);
    } else {
      rep.classification = Classification::Unstable;
    }
    return rep;
  }

  const auto& [t2, i2, v2] = eq.state;
  if (params.a <= params.d + params.a / params.t_max * (t2 + i2))
    rep.global_flags.push_back(GlobalFlag::E2_GAS_condition);
  if (std::abs(params.d - params.mu) <= 1e-12 * params.mu)
    rep.global_flags.push_back(GlobalFlag::noncytopathic_corollary);

  if (!rep.routh_hurwitz_h1)
    rep.classification = Classification::UnstableAtTauZero;
  else if (!rep.crossing.tau0)
    rep.classification = Classification::StableAllTau;
  else if (params.tau < *rep.crossing.tau0)
    rep.classification = Classification::StableBelowTau0;
  else
    rep.classification = Classification::Unstable;

  if (rep.coeffs.a2 > 0.0)
    rep.delay_length = delay_length_estimate(rep.coeffs);
  return rep;
}

} // namespace viraldyn
