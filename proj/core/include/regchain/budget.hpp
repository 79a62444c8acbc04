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

#include "regchain/duration.hpp"
#include "regchain/model.hpp"

namespace regchain {

/// Time available for regression testing. Either a finite duration or the
/// distinguished unbounded value (never a large sentinel).
class Budget {
 public:
  static Budget unbounded() { return Budget(); }
  static Budget of(Duration d);

  bool is_unbounded() const { return !limit_.has_value(); }
  // Precondition: !is_unbounded().
  Duration limit() const { return *limit_; }
  bool admits(Duration total) const { return !limit_ || total <= *limit_; }

  friend bool operator==(const Budget&, const Budget&) = default;

 private:
  Budget() = default;
  explicit Budget(Duration d) : limit_(d) {}
  std::optional<Duration> limit_;
};

/// The regression test window [start, end] between two consecutive builds.
class Window {
 public:
  // Throws kInvalidRange when end < start.
  static Window bounded(Timestamp start, Timestamp end);
  static Window unbounded(Timestamp start = Timestamp{});
  // Window starting at zero whose budget is exactly `d`.
  static Window of_budget(Duration d) { return bounded(Timestamp{}, d); }
  static Window of_budget(Budget b) {
    return b.is_unbounded() ? unbounded() : of_budget(b.limit());
  }

  Timestamp start() const { return start_; }
  std::optional<Timestamp> end() const { return end_; }
  Budget budget() const;
  bool is_unbounded() const { return !end_.has_value(); }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Window(Timestamp start, std::optional<Timestamp> end)
      : start_(start), end_(end) {}
  Timestamp start_;
  std::optional<Timestamp> end_;
};

// c(t) = exectime + setup. Throws kInvalidCost when the sum is not positive.
Duration cost(const TestCase& t);

struct ScopeResult {
  std::size_t count = 0;
  std::vector<TestId> witness;  // sorted by id
  Duration total_cost;
};

/// Maximum number of candidates whose total cost fits in the window, with one
/// minimum-cost witness of that size.
///
/// Exact for every input size: a dynamic program tracks the least total cost
/// reachable for each cardinality. Among equal-cost witnesses the one with the
/// lexicographically smallest id list is returned.
ScopeResult scope(std::span<const TestCase> candidates, const Window& window);

inline constexpr std::size_t kScopeBruteforceLimit = 20;

// Exhaustive enumeration oracle; throws kOracleLimit above 20 candidates.
ScopeResult scope_bruteforce(std::span<const TestCase> candidates,
                             const Window& window);

}  // namespace regchain
