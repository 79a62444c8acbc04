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

#include <deque>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "regchain/budget.hpp"
#include "regchain/history.hpp"
#include "regchain/regall.hpp"
#include "regchain/techniques.hpp"

namespace regchain {

/// Tuning of the history-driven prioritization agent.
///
/// After each executed schedule, a failing test's weight grows by `reward`
/// and a passing test's weight is multiplied by `decay`. Tests never seen
/// start at `initial_weight`.
struct AgentParams {
  double decay = 0.95;
  double reward = 1.0;
  std::size_t buffer_capacity = 16;
  double initial_weight = 1.0;

  friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

struct ReplayEntry {
  std::vector<TestId> sequence;
  // Fraction of the executed tests that failed.
  double reward = 0.0;

  friend bool operator==(const ReplayEntry&, const ReplayEntry&) = default;
};

/// Weight tableau plus a FIFO replay buffer of executed sequences.
class AgentState {
 public:
  AgentState() = default;
  explicit AgentState(AgentParams params) : params_(params) {}

  const AgentParams& params() const { return params_; }
  double weight(const TestId& test) const;
  const std::map<TestId, double>& weights() const { return weights_; }
  const std::deque<ReplayEntry>& buffer() const { return buffer_; }
  // Tests that failed in the most recent update.
  const std::set<TestId>& last_failures() const { return last_failures_; }

  friend bool operator==(const AgentState&, const AgentState&) = default;

 private:
  friend AgentState agent_update(const AgentState&, const Schedule&,
                                 const std::map<TestId, bool>&);

  AgentParams params_;
  std::map<TestId, double> weights_;
  std::deque<ReplayEntry> buffer_;
  std::set<TestId> last_failures_;
};

inline constexpr std::size_t kTtcpExactLimit = 7;

/// Time-limited prioritization.
///
/// Exact: walks ordered subsets of the candidates, largest size first and,
/// within a size, lexicographically over the ranking (weight descending, then
/// id). Each arrangement's quality is computed (when a metric is given) and
/// the first one whose total duration fits the window is returned. Limited to
/// 7 candidates. The number of arrangements visited is reported in
/// params["arrangements"].
///
/// Greedy: ranks by weight per unit cost (descending, then id) and takes each
/// test in turn if it still fits.
///
/// An empty result for a non-empty pool is flagged budget_starved.
Schedule ttcp(std::span<const TestCase> candidates, const AgentState& state,
              const QualityMetric* metric, const Window& window, Engine engine);

/// Picks, among previously executed sequences, the one of highest quality.
///
/// Each sequence is restricted to tests in `pool`, cut to its longest prefix
/// that fits the window, and scored; undefined scores rank lowest and ties go
/// to the most recent (last) sequence. With no history, `fallback` is
/// returned.
Schedule atcs(std::span<const std::vector<TestId>> previous,
              std::span<const TestCase> pool, const QualityMetric& metric,
              const Window& window, const Schedule& fallback);

// failed[test] is true for a failing verdict. Throws kIncompleteVerdicts when
// an executed test has no entry.
AgentState agent_update(const AgentState& state, const Schedule& executed,
                        const std::map<TestId, bool>& failed);

// Metric the agent plans with: one pseudo-fault per test that failed in its
// last update, detected only by that test.
EvalContext planning_context(const AgentState& state);

/// Planned schedule: TTCP, then ATCS over the replay buffer with the TTCP
/// order as the newest entry, then any leftover budget filled from the TTCP
/// order.
Schedule retecs_plan(std::span<const TestCase> candidates, const AgentState& state,
                     const Window& window, MetricKind planning_metric,
                     Engine engine = Engine::kGreedy);

struct CycleResult {
  Schedule schedule;
  std::vector<Verdict> verdicts;  // in schedule order
  AgentState state;
  // Realized quality of the executed schedule.
  std::optional<double> q_value;
};

/// One build transition: candidate set, plan, execute against both behavior
/// maps, update the agent. `realized` is used only to score the result.
CycleResult retecs_cycle(const Build& prev, const Build& next,
                         const AgentState& state, const Window& window,
                         MetricKind metric, const EvalContext& realized,
                         Engine engine = Engine::kGreedy);

std::map<TestId, bool> failures_of(std::span<const Verdict> verdicts);

}  // namespace regchain
