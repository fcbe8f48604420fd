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

#include <stdexcept>
#include <string>

namespace viraldyn {

/// Base of every exception thrown by the library. The C API maps the
/// concrete type onto an error code (see viraldyn.h).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-domain input values, malformed parameter files.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A caller broke an operation's precondition (e.g. step > tau).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Evaluation outside the domain a trajectory or history covers.
class RangeError : public Error {
public:
  using Error::Error;
};

/// A numerical procedure could not produce a trustworthy value, for example
/// when root bracketing fails or a sensitivity index is undefined.
class NumericalFailure : public Error {
public:
  using Error::Error;
};

/// The integrator produced a non-finite state.
class BlowUp : public NumericalFailure {
public:
  BlowUp(const std::string& what, double last_good_time)
      : NumericalFailure(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

private:
  double last_good_time_;
};

/// F(I2) = 1 could not be bracketed. Carries the last bracket tried.
class BracketFailure : public NumericalFailure {
public:
  BracketFailure(const std::string& what, double lo, double hi)
      : NumericalFailure(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

private:
  double lo_;
  double hi_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace viraldyn
