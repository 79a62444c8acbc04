// Copyright 2026 The regchain Authors
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

#include <compare>
#include <cstdint>
#include <string>

namespace regchain {

/// Exact abstract time, stored as an integer count of microunits.
///
/// All budget arithmetic goes through this type so feasibility checks never
/// depend on floating-point rounding. One "unit" is 1'000'000 microunits.
class Duration {
 public:
  static constexpr std::int64_t kMicrosPerUnit = 1'000'000;

  constexpr Duration() = default;

  static constexpr Duration micros(std::int64_t m) { return Duration(m); }
  static constexpr Duration units(std::int64_t u) {
    return Duration(u * kMicrosPerUnit);
  }
  // Rounds to the nearest microunit.
  static Duration from_units(double u);

  constexpr std::int64_t micros() const { return micros_; }
  double to_units() const {
    return static_cast<double>(micros_) / static_cast<double>(kMicrosPerUnit);
  }

  constexpr Duration& operator+=(Duration o) {
    micros_ += o.micros_;
    return *this;
  }
  constexpr Duration& operator-=(Duration o) {
    micros_ -= o.micros_;
    return *this;
  }
  friend constexpr Duration operator+(Duration a, Duration b) {
    return Duration(a.micros_ + b.micros_);
  }
  friend constexpr Duration operator-(Duration a, Duration b) {
    return Duration(a.micros_ - b.micros_);
  }
  friend constexpr auto operator<=>(Duration, Duration) = default;

 private:
  constexpr explicit Duration(std::int64_t m) : micros_(m) {}
  std::int64_t micros_ = 0;
};

// Shortest decimal rendering in units, e.g. "3", "2.5", "0.000001".
std::string format_units(Duration d);

/// A point on the abstract timeline (same resolution as Duration).
using Timestamp = Duration;

}  // namespace regchain
