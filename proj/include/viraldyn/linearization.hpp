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

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "viraldyn/equilibria.hpp"
#include "viraldyn/model.hpp"

namespace viraldyn {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Partial derivatives of eval_rhs at an equilibrium, with respect to the
/// current state (j_now) and the lagged state (j_lag). Only row 1 (dI/dt) of
/// j_lag is nonzero, in columns 0 (T) and 2 (V).
struct JacobianPair {
  Matrix3 j_now{};
  Matrix3 j_lag{};
};

/// Coefficients of the characteristic function
///   degree 3:  l^3 + a2 l^2 + a1 l + a0 + (b1 l + b0) e^{-l tau}
///   degree 2:  l^2 + a1 l + a0 + (b1 l + b0) e^{-l tau}   (a2 == 0, unused)
struct CharCoeffs {
  int degree = 3;
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  double b1 = 0.0;
  double b0 = 0.0;

  std::complex<double> instantaneous(std::complex<double> lambda) const;
  std::complex<double> delayed(std::complex<double> lambda) const;
  std::complex<double> evaluate(std::complex<double> lambda, double tau) const;
  /// Sum of |terms| at lambda, a scale for relative residuals.
  double magnitude(std::complex<double> lambda) const;
};

JacobianPair jacobians(const ModelParams& params, const Equilibrium& eq);

/// At E2 (degree 3): expansion of det(lambda I - j_now - e^{-lambda tau} j_lag)
/// split into polynomial and e^{-lambda tau} parts. At E1 (degree 2): the
/// (I, V) block, after factoring out lambda = a - d - 2 a T0/Tmax.
CharCoeffs char_coeffs(const ModelParams& params, const Equilibrium& eq);

/// The eigenvalue split off at E1: -(s/T0 + a T0/Tmax).
double infection_free_t_eigenvalue(const ModelParams& params);

/// a0 + b0 > 0 and a2 (a1 + b1) - (a0 + b0) > 0. Degree 3 only; throws
/// ContractViolation otherwise.
bool routh_hurwitz_h1(const CharCoeffs& coeffs);

/// tau = 0 Routh-Hurwitz for either degree (a1 + b1 > 0 and a0 + b0 > 0 for
/// the quadratic).
bool stable_at_tau_zero(const CharCoeffs& coeffs);

/// One purely imaginary root l = i omega and the first delay producing it.
struct Crossing {
  double z = 0.0;       ///< omega^2
  double omega = 0.0;
  double tau = 0.0;     ///< smallest tau >= 0 with a root at i omega
  int transversality_sign = 0;  ///< sign of dF/dz at z
};

/// |P(i w)|^2 - |Q(i w)|^2 written in z = w^2. For degree 3 this is
/// z^3 + A z^2 + B z + C with A = a2^2 - 2a1, B = a1^2 - 2 a2 a0 - b1^2,
/// C = a0^2 - b0^2. For degree 2 it is z^2 + B z + C with
/// B = a1^2 - 2a0 - b1^2, C = a0^2 - b0^2, and A is reported as 0.
struct CrossingAnalysis {
  int degree = 3;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  std::vector<double> positive_z_roots;  ///< ascending
  std::vector<Crossing> crossings;       ///< one per positive simple root
  std::optional<double> omega0;          ///< frequency of the first crossing
  std::optional<double> tau0;
  std::optional<int> transversality_sign;
  /// Sign of dF/dz at the largest positive simple root.
  std::optional<int> largest_root_transversality;
};

CrossingAnalysis crossing_analysis(const CharCoeffs& coeffs);

/// tau0 = (1/omega0) arccos[(b0(a2 w^2 - a0) + b1 w (w^3 - a1 w)) / (b0^2 + b1^2 w^2)],
/// moved to the 2 pi - theta branch when the implied sin(omega0 tau0) is
/// negative. The arccos argument is clamped within 1e-9 of +-1; larger
/// excursions throw NumericalFailure.
double hopf_tau0(const CharCoeffs& coeffs, double omega0);

enum class Classification { StableAllTau, StableBelowTau0, UnstableAtTauZero, Unstable };

enum class GlobalFlag { E1_GAS, E2_GAS_condition, noncytopathic_corollary };

std::string to_string(Classification c);
std::string to_string(GlobalFlag f);

/// Conservative delay bound from the Nyquist argument.
struct DelayLengthEstimate {
  double v_plus = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  std::optional<double> tau_plus;  ///< absent when K3 <= 0 or K1 == 0
  std::string note;
};

/// Degree 3 with a2 > 0, else ContractViolation.
DelayLengthEstimate delay_length_estimate(const CharCoeffs& coeffs);

struct StabilityReport {
  Equilibrium equilibrium;
  double tau = 0.0;
  CharCoeffs coeffs;
  bool routh_hurwitz_h1 = false;  ///< tau = 0 stability (quadratic RH at E1)
  CrossingAnalysis crossing;
  Classification classification = Classification::Unstable;
  std::vector<GlobalFlag> global_flags;
  std::optional<DelayLengthEstimate> delay_length;  ///< E2 only
};

StabilityReport classify(const ModelParams& params, const Equilibrium& eq);

} // namespace viraldyn
