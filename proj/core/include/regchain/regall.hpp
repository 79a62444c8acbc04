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

#include <optional>
#include <span>
#include <vector>

#include "regchain/budget.hpp"
#include "regchain/model.hpp"

namespace regchain {

/// Outcome of one test on two consecutive builds.
struct Verdict {
  TestId test_id;
  Outcome outcome_prev;
  Outcome outcome_next;
  bool consistent = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Runs one test against both programs. Throws kUndefinedExecution when either
// behavior map lacks the test.
Verdict evaluate(const TestId& test, const Build& prev, const Build& next);

// Verdicts for `tests`, in the given order.
std::vector<Verdict> execute(std::span<const TestId> tests, const Build& prev,
                             const Build& next);

/// Result of retest-all over the tests shared by two builds.
///
/// There is deliberately no accept/reject field: a 0 result says outcomes
/// diverged, not that the build is rejected.
struct RegAllReport {
  int result = 1;
  std::vector<Verdict> verdicts;  // sorted by test id
  std::optional<TestId> first_inconsistent;
  // True when the overlap is empty and result = 1 holds vacuously.
  bool vacuous = false;
};

// Requires an unbounded window (kRequiresInfiniteWindow otherwise).
RegAllReport reg_all(const Build& prev, const Build& next, const Window& window);

}  // namespace regchain
