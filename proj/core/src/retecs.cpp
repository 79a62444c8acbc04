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

#include "regchain/retecs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace regchain {

double AgentState::weight(const TestId& test) const {
  auto it = weights_.find(test);
  return it == weights_.end() ? params_.initial_weight : it->second;
}

namespace {

std::vector<std::size_t> rank_by_weight(std::span<const TestCase> candidates,
                                        const AgentState& state) {
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double wa = state.weight(candidates[a].id);
    const double wb = state.weight(candidates[b].id);
    if (wa != wb) return wa > wb;
    return candidates[a].id < candidates[b].id;
  });
  return order;
}

Schedule ttcp_exact(std::span<const TestCase> candidates, const AgentState& state,
                    const QualityMetric* metric, const Budget& budget) {
  if (candidates.size() > kTtcpExactLimit) {
    throw Error(ErrorCode::kEngineLimit,
                "exact TTCP is limited to " + std::to_string(kTtcpExactLimit) +
                    " candidates; use the greedy engine");
  }
  const auto ranking = rank_by_weight(candidates, state);
  const std::size_t n = ranking.size();
  std::vector<Duration> costs(n);
  for (std::size_t i = 0; i < n; ++i) costs[i] = cost(candidates[ranking[i]]);

  std::size_t visited = 0;
  std::vector<std::size_t> arrangement;
  std::vector<bool> used(n, false);
  std::optional<std::vector<std::size_t>> found;

  // Depth-first over ranking positions gives lexicographic order.
  std::function<bool(std::size_t)> walk = [&](std::size_t k) -> bool {
    if (arrangement.size() == k) {
      ++visited;
      std::vector<TestId> ids;
      Duration total;
      for (auto pos : arrangement) {
        ids.push_back(candidates[ranking[pos]].id);
        total += costs[pos];
      }
      if (metric) (void)(*metric)(ids);
      if (budget.admits(total)) {
        found = arrangement;
        return true;
      }
      return false;
    }
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (used[pos]) continue;
      used[pos] = true;
      arrangement.push_back(pos);
      const bool done = walk(k);
      arrangement.pop_back();
      used[pos] = false;
      if (done) return true;
    }
    return false;
  };

  for (std::size_t k = n; k >= 1 && !found; --k) walk(k);

  std::vector<TestId> order;
  if (found) {
    for (auto pos : *found) order.push_back(candidates[ranking[pos]].id);
  }
  auto s = make_schedule(order, candidates, "ttcp-exact");
  s.params["arrangements"] = std::to_string(visited);
  s.budget_starved = n > 0 && order.empty();
  return s;
}

Schedule ttcp_greedy(std::span<const TestCase> candidates, const AgentState& state,
                     const Budget& budget) {
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> density(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    density[i] = state.weight(candidates[i].id) / cost(candidates[i]).to_units();
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (density[a] != density[b]) return density[a] > density[b];
    return candidates[a].id < candidates[b].id;
  });
  std::vector<TestId> picked;
  Duration total;
  for (auto i : order) {
    const Duration c = cost(candidates[i]);
    if (!budget.admits(total + c)) continue;
    total += c;
    picked.push_back(candidates[i].id);
  }
  auto s = make_schedule(picked, candidates, "ttcp-greedy");
  s.budget_starved = !candidates.empty() && picked.empty();
  return s;
}

}  // namespace

Schedule ttcp(std::span<const TestCase> candidates, const AgentState& state,
              const QualityMetric* metric, const Window& window, Engine engine) {
  const Budget budget = window.budget();
  return engine == Engine::kExact ? ttcp_exact(candidates, state, metric, budget)
                                  : ttcp_greedy(candidates, state, budget);
}

Schedule atcs(std::span<const std::vector<TestId>> previous,
              std::span<const TestCase> pool, const QualityMetric& metric,
              const Window& window, const Schedule& fallback) {
  if (previous.empty()) return fallback;
  std::set<TestId> in_pool;
  for (const auto& t : pool) in_pool.insert(t.id);

  std::optional<Schedule> best;
  double best_q = -std::numeric_limits<double>::infinity();
  for (const auto& sequence : previous) {
    std::vector<TestId> kept;
    for (const auto& id : sequence) {
      if (in_pool.contains(id)) kept.push_back(id);
    }
    auto s = schedule_under_budget(make_schedule(kept, pool, "atcs"), window);
    const auto q = metric(s.ids());
    const double value = q ? *q : -std::numeric_limits<double>::infinity();
    if (!best || value >= best_q) {
      best_q = value;
      best = std::move(s);
    }
  }
  best->budget_starved = !pool.empty() && best->empty();
  return *best;
}

AgentState agent_update(const AgentState& state, const Schedule& executed,
                        const std::map<TestId, bool>& failed) {
  AgentState next = state;
  next.last_failures_.clear();
  std::size_t failures = 0;
  for (const auto& e : executed.entries) {
    auto it = failed.find(e.id);
    if (it == failed.end()) {
      throw Error(ErrorCode::kIncompleteVerdicts,
                  "no verdict for executed test '" + e.id + "'");
    }
    const double w = state.weight(e.id);
    if (it->second) {
      ++failures;
      next.weights_[e.id] = w + state.params_.reward;
      next.last_failures_.insert(e.id);
    } else {
      next.weights_[e.id] = w * state.params_.decay;
    }
  }
  ReplayEntry entry;
  entry.sequence = executed.ids();
  entry.reward = executed.empty() ? 0.0
                                  : static_cast<double>(failures) /
                                        static_cast<double>(executed.size());
  next.buffer_.push_back(std::move(entry));
  while (next.buffer_.size() > state.params_.buffer_capacity) {
    next.buffer_.pop_front();
  }
  return next;
}

EvalContext planning_context(const AgentState& state) {
  EvalContext ctx;
  for (const auto& t : state.last_failures()) ctx.faults["seen:" + t] = {t};
  return ctx;
}

Schedule retecs_plan(std::span<const TestCase> candidates, const AgentState& state,
                     const Window& window, MetricKind planning_metric,
                     Engine engine) {
  const QualityMetric metric = bind_metric(planning_metric, planning_context(state));
  const Schedule prioritized = ttcp(candidates, state, &metric, window, engine);

  std::vector<std::vector<TestId>> previous;
  for (const auto& entry : state.buffer()) previous.push_back(entry.sequence);
  previous.push_back(prioritized.ids());
  Schedule chosen = atcs(previous, candidates, metric, window, prioritized);

  // Spend what is left of the window on the prioritized order.
  const Budget budget = window.budget();
  std::vector<TestId> order = chosen.ids();
  std::set<TestId> taken(order.begin(), order.end());
  Duration total = chosen.total_cost;
  for (const auto& e : prioritized.entries) {
    if (taken.contains(e.id) || !budget.admits(total + e.duration)) continue;
    total += e.duration;
    order.push_back(e.id);
  }
  auto s = make_schedule(order, candidates, "retecs");
  s.params["engine"] = engine == Engine::kExact ? "exact" : "greedy";
  s.budget_starved = !candidates.empty() && s.empty();
  return s;
}

std::map<TestId, bool> failures_of(std::span<const Verdict> verdicts) {
  std::map<TestId, bool> out;
  for (const auto& v : verdicts) out[v.test_id] = !v.consistent;
  return out;
}

CycleResult retecs_cycle(const Build& prev, const Build& next,
                         const AgentState& state, const Window& window,
                         MetricKind metric, const EvalContext& realized,
                         Engine engine) {
  const auto candidates = candidate_set(prev, next);
  CycleResult r;
  r.schedule = retecs_plan(candidates.tests, state, window, metric, engine);
  const auto ids = r.schedule.ids();
  r.verdicts = execute(ids, prev, next);
  r.state = agent_update(state, r.schedule, failures_of(r.verdicts));
  r.q_value = bind_metric(metric, realized)(ids);
  return r;
}

}  // namespace regchain
