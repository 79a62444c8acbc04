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

#include "regchain/budget.hpp"

#include <algorithm>
#include <limits>

namespace regchain {

Budget Budget::of(Duration d) {
  if (d < Duration{}) {
    throw Error(ErrorCode::kInvalidRange, "budget must be non-negative");
  }
  return Budget(d);
}

Window Window::bounded(Timestamp start, Timestamp end) {
  if (end < start) {
    throw Error(ErrorCode::kInvalidRange, "window ends before it starts");
  }
  return Window(start, end);
}

Window Window::unbounded(Timestamp start) { return Window(start, std::nullopt); }

Budget Window::budget() const {
  return end_ ? Budget::of(*end_ - start_) : Budget::unbounded();
}

Duration cost(const TestCase& t) {
  const Duration c = t.duration();
  if (c <= Duration{}) {
    throw Error(ErrorCode::kInvalidCost,
                "test '" + t.id + "' has non-positive cost " + format_units(c));
  }
  return c;
}

namespace {

std::vector<Duration> costs_of(std::span<const TestCase> candidates) {
  std::vector<Duration> costs;
  costs.reserve(candidates.size());
  for (const auto& t : candidates) costs.push_back(cost(t));
  return costs;
}

ScopeResult whole_set(std::span<const TestCase> candidates,
                      const std::vector<Duration>& costs) {
  ScopeResult r;
  r.count = candidates.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    r.witness.push_back(candidates[i].id);
    r.total_cost += costs[i];
  }
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

}  // namespace

ScopeResult scope(std::span<const TestCase> candidates, const Window& window) {
  const auto costs = costs_of(candidates);
  const Budget budget = window.budget();
  if (budget.is_unbounded()) return whole_set(candidates, costs);

  // min_cost[k]: least total cost of any k-subset of the items seen so far.
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  const std::size_t n = candidates.size();
  std::vector<std::int64_t> min_cost(n + 1, kInf);
  min_cost[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k >= 1; --k) {
      if (min_cost[k - 1] != kInf) {
        min_cost[k] = std::min(min_cost[k], min_cost[k - 1] + costs[i].micros());
      }
    }
  }
  std::size_t count = 0;
  for (std::size_t k = n; k > 0; --k) {
    if (min_cost[k] <= budget.limit().micros()) {
      count = k;
      break;
    }
  }

  // A k-subset of least cost is any k cheapest items; taking ties by id gives
  // the lexicographically smallest witness.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (costs[a] != costs[b]) return costs[a] < costs[b];
    return candidates[a].id < candidates[b].id;
  });
  ScopeResult r;
  r.count = count;
  for (std::size_t k = 0; k < count; ++k) {
    r.witness.push_back(candidates[order[k]].id);
    r.total_cost += costs[order[k]];
  }
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

ScopeResult scope_bruteforce(std::span<const TestCase> candidates,
                             const Window& window) {
  if (candidates.size() > kScopeBruteforceLimit) {
    throw Error(ErrorCode::kOracleLimit,
                "brute-force scope is limited to " +
                    std::to_string(kScopeBruteforceLimit) + " candidates");
  }
  const auto costs = costs_of(candidates);
  const Budget budget = window.budget();
  const std::size_t n = candidates.size();

  ScopeResult best;
  bool have_best = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Duration total;
    std::vector<TestId> ids;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        total += costs[i];
        ids.push_back(candidates[i].id);
      }
    }
    if (!budget.admits(total)) continue;
    std::sort(ids.begin(), ids.end());
    const bool better =
        !have_best || ids.size() > best.count ||
        (ids.size() == best.count &&
         (total < best.total_cost ||
          (total == best.total_cost && ids < best.witness)));
    if (better) {
      best.count = ids.size();
      best.witness = std::move(ids);
      best.total_cost = total;
      have_best = true;
    }
  }
  return best;
}

}  // namespace regchain
