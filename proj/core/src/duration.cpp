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

#include "regchain/duration.hpp"

#include <cmath>
#include <cstdlib>

namespace regchain {

Duration Duration::from_units(double u) {
  return Duration::micros(
      std::llround(u * static_cast<double>(kMicrosPerUnit)));
}

std::string format_units(Duration d) {
  std::int64_t m = d.micros();
  std::string sign = m < 0 ? "-" : "";
  std::int64_t a = std::llabs(m);
  std::string out =
      sign + std::to_string(a / Duration::kMicrosPerUnit);
  std::int64_t frac = a % Duration::kMicrosPerUnit;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 6 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

}  // namespace regchain
