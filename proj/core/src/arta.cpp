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

#include "regchain/arta.hpp"

#include <algorithm>
#include <bit>

#include "regchain/rng.hpp"

namespace regchain {

Schedule RetestAllStrategy::plan(const TransitionInput& input) {
  std::vector<TestId> ids;
  for (const auto& t : input.candidates) ids.push_back(t.id);
  auto s = schedule_under_budget(make_schedule(ids, input.candidates, "retest-all"),
                                 input.window);
  s.budget_starved = !input.candidates.empty() && s.empty();
  return s;
}

Schedule RandomKStrategy::plan(const TransitionInput& input) {
  const auto chosen = rts_select(
      input.prev, input.next,
      RandomKSelector{k_, mix_seed(seed_, static_cast<std::uint64_t>(input.next.index()))});
  auto s = schedule_under_budget(make_schedule(chosen, input.candidates, "random-k"),
                                 input.window);
  s.params["k"] = std::to_string(k_);
  s.budget_starved = !chosen.empty() && s.empty();
  return s;
}

Schedule RetecsStrategy::plan(const TransitionInput& input) {
  return retecs_plan(input.candidates, state_, input.window, metric_, engine_);
}

void RetecsStrategy::observe(const TransitionInput&, const Schedule& executed,
                             std::span<const Verdict> verdicts) {
  state_ = agent_update(state_, executed, failures_of(verdicts));
}

Schedule DepGraphStrategy::plan(const TransitionInput& input) {
  ChangeSet changes;
  changes.changed_classes = input.changed_classes;
  graph_ = update_graph(graph_, changes);

  std::vector<TestId> ids;
  for (const auto& t : input.candidates) ids.push_back(t.id);
  const auto affected = affected_tests(graph_, input.changed_classes, ids);
  std::vector<TestCase> selected;
  for (const auto& t : input.candidates) {
    if (std::binary_search(affected.begin(), affected.end(), t.id)) {
      selected.push_back(t);
    }
  }
  auto s = order_by_history(selected, history_, input.window, ranking_);
  s.technique = "depgraph";
  return s;
}

void DepGraphStrategy::observe(const TransitionInput& input, const Schedule& executed,
                               std::span<const Verdict> verdicts) {
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    history_.record(verdicts[i].test_id,
                    ExecutionRecord{input.next.index(), !verdicts[i].consistent,
                                    executed.entries[i].duration});
  }
}

namespace {

void check_windows(const Scenario& scenario, std::span<const Window> windows) {
  const std::size_t expected = scenario.chain.empty() ? 0 : scenario.chain.size() - 1;
  if (windows.size() != expected) {
    throw Error(ErrorCode::kConfiguration,
                "expected " + std::to_string(expected) + " windows, got " +
                    std::to_string(windows.size()));
  }
}

void enforce_definition(const Schedule& s, const TransitionInput& input) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kArtaViolation,
                "build " + std::to_string(input.next.index()) + ": " + why);
  };
  std::set<TestId> seen;
  Duration total;
  for (const auto& e : s.entries) {
    const auto it = std::lower_bound(
        input.candidates.begin(), input.candidates.end(), e.id,
        [](const TestCase& t, const TestId& key) { return t.id < key; });
    if (it == input.candidates.end() || it->id != e.id) {
      fail("scheduled test '" + e.id + "' is not a candidate");
    }
    if (!seen.insert(e.id).second) fail("test '" + e.id + "' scheduled twice");
    total += cost(*it);
  }
  if (!input.window.budget().admits(total)) {
    fail("schedule of cost " + format_units(total) + " overruns the window");
  }
}

bool same_value(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::bit_cast<std::uint64_t>(*a) == std::bit_cast<std::uint64_t>(*b);
}

}  // namespace

std::vector<LiveStep> run_live(ArtaStrategy& strategy, const Scenario& scenario,
                               std::span<const Window> windows, MetricKind metric) {
  check_windows(scenario, windows);
  const auto& builds = scenario.chain.builds();
  std::vector<LiveStep> steps;
  if (builds.empty()) return steps;
  steps.push_back(LiveStep{builds.front().index(), Schedule{}, {}, std::nullopt});
  for (std::size_t k = 1; k < builds.size(); ++k) {
    const Build& prev = builds[k - 1];
    const Build& next = builds[k];
    TransitionInput input{prev, next, candidate_set(prev, next).tests, windows[k - 1],
                          scenario.changes_at(next.index())};
    LiveStep step;
    step.index = next.index();
    step.schedule = strategy.plan(input);
    enforce_definition(step.schedule, input);
    const auto ids = step.schedule.ids();
    step.verdicts = execute(ids, prev, next);
    step.q_value = bind_metric(metric, scenario.context_for(prev, next))(ids);
    strategy.observe(input, step.schedule, step.verdicts);
    steps.push_back(std::move(step));
  }
  return steps;
}

BuildTrace make_trace(std::string strategy, const Scenario& scenario,
                    std::span<const Window> windows, std::span<const LiveStep> steps) {
  BuildTrace trace;
  trace.strategy = std::move(strategy);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Build& b = scenario.chain.builds()[k];
    TraceTuple t;
    t.index = b.index();
    t.program_id = b.program().id();
    const auto specs = b.specs().ids();
    t.spec_ids.assign(specs.begin(), specs.end());
    t.test_ids = b.test_ids();
    t.budget = k == 0 ? Budget::unbounded() : windows[k - 1].budget();
    t.q_value = steps[k].q_value;
    t.schedule = steps[k].schedule.ids();
    trace.tuples.push_back(std::move(t));
  }
  return trace;
}

BuildTrace record_trace(ArtaStrategy& strategy, const Scenario& scenario,
                      std::span<const Window> windows, MetricKind metric) {
  const auto steps = run_live(strategy, scenario, windows, metric);
  return make_trace(strategy.name(), scenario, windows, steps);
}

TraceDivergence::TraceDivergence(BuildIndex build, std::string field)
    : Error(ErrorCode::kTraceDivergence,
            "trace diverges from the chain at build " + std::to_string(build) +
                ", field '" + field + "'"),
      build_(build),
      field_(std::move(field)) {}

std::vector<ReplayStep> replay_trace(const BuildTrace& trace, const BuildChain& chain) {
  const auto& builds = chain.builds();
  const std::size_t common = std::min(trace.tuples.size(), builds.size());
  std::vector<ReplayStep> out;
  for (std::size_t k = 0; k < common; ++k) {
    const TraceTuple& t = trace.tuples[k];
    const Build& b = builds[k];
    if (t.index != b.index()) throw TraceDivergence(b.index(), "index");
    if (t.program_id != b.program().id()) throw TraceDivergence(b.index(), "program_id");
    const auto specs = b.specs().ids();
    if (t.spec_ids != std::vector<StoryId>(specs.begin(), specs.end())) {
      throw TraceDivergence(b.index(), "spec_ids");
    }
    if (t.test_ids != b.test_ids()) throw TraceDivergence(b.index(), "test_ids");

    ReplayStep step;
    step.index = b.index();
    if (k == 0) {
      if (!t.schedule.empty()) throw TraceDivergence(b.index(), "schedule");
      out.push_back(std::move(step));
      continue;
    }
    const auto candidates = candidate_set(builds[k - 1], b);
    try {
      step.schedule = make_schedule(t.schedule, candidates.tests, "replay");
    } catch (const Error&) {
      throw TraceDivergence(b.index(), "schedule");
    }
    if (!t.budget.admits(step.schedule.total_cost)) {
      throw TraceDivergence(b.index(), "budget");
    }
    step.verdicts = execute(t.schedule, builds[k - 1], b);
    out.push_back(std::move(step));
  }
  if (trace.tuples.size() != builds.size()) {
    const BuildIndex at = common < builds.size()
                              ? builds[common].index()
                              : trace.tuples[common].index;
    throw TraceDivergence(at, "length");
  }
  return out;
}

bool CompletenessReport::all_verified() const {
  return std::all_of(builds.begin(), builds.end(),
                     [](const BuildCheck& b) { return b.verified(); });
}

CompletenessReport check_completeness(const StrategyFactory& factory,
                                      const Scenario& scenario,
                                      std::span<const Window> windows,
                                      MetricKind metric) {
  auto live_strategy = factory();
  const auto live = run_live(*live_strategy, scenario, windows, metric);
  auto traced_strategy = factory();
  const auto trace = record_trace(*traced_strategy, scenario, windows, metric);

  CompletenessReport report;
  report.strategy = trace.strategy;
  std::vector<ReplayStep> replayed;
  bool replay_ok = true;
  try {
    replayed = replay_trace(trace, scenario.chain);
  } catch (const TraceDivergence&) {
    replay_ok = false;
  }

  const auto& builds = scenario.chain.builds();
  for (std::size_t k = 0; k < builds.size(); ++k) {
    const Build& b = builds[k];
    BuildCheck check;
    check.index = b.index();
    if (k >= trace.tuples.size() || k >= live.size()) {
      report.builds.push_back(check);
      continue;
    }
    const TraceTuple& t = trace.tuples[k];
    const auto specs = b.specs().ids();
    check.program = t.program_id == b.program().id();
    check.specs = t.spec_ids == std::vector<StoryId>(specs.begin(), specs.end());
    check.tests = t.test_ids == b.test_ids();
    check.budget =
        t.budget == (k == 0 ? Budget::unbounded() : windows[k - 1].budget());
    check.q_value = same_value(t.q_value, live[k].q_value);
    check.schedule = t.schedule == live[k].schedule.ids();
    check.verdicts = replay_ok && k < replayed.size() &&
                     replayed[k].verdicts == live[k].verdicts;
    report.builds.push_back(check);
  }
  return report;
}

}  // namespace regchain
