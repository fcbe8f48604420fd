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

#include "viraldyn/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace viraldyn {

namespace {

constexpr double kImagTol = 1e-10;
constexpr double kSimpleTol = 1e-9;

double cubic_at(double a, double b, double c, double z) { return ((z + a) * z + b) * z + c; }
double cubic_slope(double a, double b, double z) { return (3.0 * z + 2.0 * a) * z + b; }

double polish(double a, double b, double c, double z) {
  for (int iter = 0; iter < 3; ++iter) {
    const double f = cubic_at(a, b, c, z);
    const double df = cubic_slope(a, b, z);
    if (f == 0.0 || df == 0.0)
      break;
    const double next = z - f / df;
    if (!(std::abs(cubic_at(a, b, c, next)) < std::abs(f)))
      break;
    z = next;
  }
  return z;
}

RealRoot classify_cubic_root(double a, double b, double z) {
  const double df = cubic_slope(a, b, z);
  const double term_scale = 3.0 * z * z + 2.0 * std::abs(a * z) + std::abs(b);
  return {z, df, std::abs(df) > kSimpleTol * term_scale && term_scale > 0.0};
}

void sort_roots(std::vector<RealRoot>& roots) {
  std::sort(roots.begin(), roots.end(),
            [](const RealRoot& x, const RealRoot& y) { return x.value < y.value; });
}

} // namespace

std::vector<RealRoot> real_roots_quadratic(double b, double c) {
  std::vector<RealRoot> roots;
  const double scale = std::max(std::abs(b), std::sqrt(std::abs(c)));
  auto make = [&](double z) {
    const double df = 2.0 * z + b;
    const double term_scale = 2.0 * std::abs(z) + std::abs(b);
    return RealRoot{z, df, std::abs(df) > kSimpleTol * term_scale && term_scale > 0.0};
  };
  if (scale == 0.0)
    return {make(0.0), make(0.0)};
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    if (0.5 * std::sqrt(-disc) < kImagTol * scale) {
      roots = {make(-0.5 * b), make(-0.5 * b)};
    }
    return roots;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double z1 = q;
  const double z2 = (q != 0.0) ? c / q : 0.0;
  roots = {make(z1), make(z2)};
  sort_roots(roots);
  return roots;
}

std::vector<RealRoot> real_roots_cubic(double a, double b, double c) {
  const double scale = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c))});
  if (scale == 0.0)
    return {classify_cubic_root(a, b, 0.0), classify_cubic_root(a, b, 0.0),
            classify_cubic_root(a, b, 0.0)};

  // Depressed cubic y^3 + p y + q with z = y - a/3.
  const double shift = a / 3.0;
  const double p = b - a * shift;
  const double q = (2.0 * a * a * a) / 27.0 - a * b / 3.0 + c;
  const double disc = 0.25 * q * q + (p * p * p) / 27.0;

  std::vector<double> zs;
  if (disc < 0.0) {
    // Three distinct real roots; p < 0 here.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      zs.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
  } else {
    const double big = -0.5 * q - std::copysign(std::sqrt(disc), q);
    const double u = std::cbrt(big);
    const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    const double r = polish(a, b, c, u + v - shift);
    zs.push_back(r);
    // Deflate: z^3 + a z^2 + b z + c = (z - r)(z^2 + e1 z + e0).
    const double e1 = a + r;
    const double e0 = b + e1 * r;
    const double qdisc = e1 * e1 - 4.0 * e0;
    if (qdisc >= 0.0) {
      const double qq = -0.5 * (e1 + std::copysign(std::sqrt(qdisc), e1));
      zs.push_back(qq);
      zs.push_back(qq != 0.0 ? e0 / qq : 0.0);
    } else if (0.5 * std::sqrt(-qdisc) < kImagTol * scale) {
      zs.push_back(-0.5 * e1);
      zs.push_back(-0.5 * e1);
    }
  }

  std::vector<RealRoot> roots;
  for (double z : zs)
    roots.push_back(classify_cubic_root(a, b, polish(a, b, c, z)));
  sort_roots(roots);
  return roots;
}

} // namespace viraldyn
