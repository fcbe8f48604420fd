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

#include <vector>

namespace viraldyn {

/// A real root together with the polynomial's derivative there.
struct RealRoot {
  double value = 0.0;
  double derivative = 0.0;
  bool simple = true;
};

/// Real roots of the monic quadratic z^2 + b z + c, ascending.
std::vector<RealRoot> real_roots_quadratic(double b, double c);

/// Real roots of the monic cubic z^3 + a z^2 + b z + c, ascending.
///
/// Closed form (trigonometric for three real roots, Cardano otherwise)
/// followed by Newton polishing. A complex pair whose imaginary part is
/// below 1e-10 of the root scale is reported as a real double root. A root is
/// `simple` when |F'(z)| exceeds 1e-9 of the derivative's term scale.
std::vector<RealRoot> real_roots_cubic(double a, double b, double c);

} // namespace viraldyn
