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

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regchain/budget.hpp"
#include "regchain/regall.hpp"
#include "regchain/retecs.hpp"
#include "regchain/scenario.hpp"
#include "regchain/techniques.hpp"

namespace regchain {

/// What a strategy sees at one build transition.
struct TransitionInput {
  const Build& prev;
  const Build& next;
  std::vector<TestCase> candidates;  // T_prev ∩ T_next, sorted by id
  Window window;
  const std::set<ClassId>& changed_classes;
};

/// Any per-build regression testing procedure: picks an ordered subset of
/// the candidates that finishes within the window, then observes the verdicts.
class ArtaStrategy {
 public:
  virtual ~ArtaStrategy() = default;

  virtual std::string name() const = 0;
  virtual Schedule plan(const TransitionInput& input) = 0;
  virtual void observe(const TransitionInput& input, const Schedule& executed,
                       std::span<const Verdict> verdicts) {
    (void)input;
    (void)executed;
    (void)verdicts;
  }
};

using StrategyFactory = std::function<std::unique_ptr<ArtaStrategy>()>;

// Candidates in id order, cut to the window.
class RetestAllStrategy final : public ArtaStrategy {
 public:
  std::string name() const override { return "retest-all"; }
  Schedule plan(const TransitionInput& input) override;
};

// k candidates drawn with a per-build seed, in id order, cut to the window.
class RandomKStrategy final : public ArtaStrategy {
 public:
  RandomKStrategy(std::size_t k, std::uint64_t seed) : k_(k), seed_(seed) {}
  std::string name() const override { return "random-k"; }
  Schedule plan(const TransitionInput& input) override;

 private:
  std::size_t k_;
  std::uint64_t seed_;
};

class RetecsStrategy final : public ArtaStrategy {
 public:
  explicit RetecsStrategy(AgentParams params = {},
                          MetricKind planning_metric = MetricKind::kApfd,
                          Engine engine = Engine::kGreedy)
      : state_(params), metric_(planning_metric), engine_(engine) {}

  std::string name() const override { return "retecs"; }
  Schedule plan(const TransitionInput& input) override;
  void observe(const TransitionInput& input, const Schedule& executed,
               std::span<const Verdict> verdicts) override;

  const AgentState& state() const { return state_; }

 private:
  AgentState state_;
  MetricKind metric_;
  Engine engine_;
};

/// Dependency-graph selection followed by history ordering. The graph is
/// updated with each build's changed classes before it is queried.
class DepGraphStrategy final : public ArtaStrategy {
 public:
  explicit DepGraphStrategy(DepGraph graph,
                            RankingFn ranking = RecentFailureRanking{})
      : graph_(std::move(graph)), ranking_(std::move(ranking)) {}

  std::string name() const override { return "depgraph"; }
  Schedule plan(const TransitionInput& input) override;
  void observe(const TransitionInput& input, const Schedule& executed,
               std::span<const Verdict> verdicts) override;

  const ExecutionHistory& history() const { return history_; }

 private:
  DepGraph graph_;
  RankingFn ranking_;
  ExecutionHistory history_;
};

/// Per-build record: program, stories, tests, budget, quality and the
/// schedule executed.
///
/// Build 1 has no predecessor: its schedule is empty, its budget unbounded
/// and its quality undefined.
struct TraceTuple {
  BuildIndex index = 0;
  ProgramId program_id = 0;
  std::vector<StoryId> spec_ids;
  std::vector<TestId> test_ids;
  Budget budget = Budget::unbounded();
  std::optional<double> q_value;
  std::vector<TestId> schedule;

  friend bool operator==(const TraceTuple&, const TraceTuple&) = default;
};

struct BuildTrace {
  std::string strategy;
  std::vector<TraceTuple> tuples;

  friend bool operator==(const BuildTrace&, const BuildTrace&) = default;
};

/// Result of running a strategy at one build.
struct LiveStep {
  BuildIndex index = 0;
  Schedule schedule;
  std::vector<Verdict> verdicts;
  std::optional<double> q_value;
};

// Runs the strategy over every transition of the chain. `windows[k]` governs
// the transition into the (k+2)-th build. Throws kArtaViolation, naming the
// build, when a schedule leaves the candidate set or overruns its window.
std::vector<LiveStep> run_live(ArtaStrategy& strategy, const Scenario& scenario,
                               std::span<const Window> windows, MetricKind metric);

// Tuples for the steps of a live run.
BuildTrace make_trace(std::string strategy, const Scenario& scenario,
                    std::span<const Window> windows, std::span<const LiveStep> steps);

BuildTrace record_trace(ArtaStrategy& strategy, const Scenario& scenario,
                      std::span<const Window> windows, MetricKind metric);

class TraceDivergence : public Error {
 public:
  TraceDivergence(BuildIndex build, std::string field);
  BuildIndex build() const { return build_; }
  const std::string& field() const { return field_; }

 private:
  BuildIndex build_;
  std::string field_;
};

struct ReplayStep {
  BuildIndex index = 0;
  Schedule schedule;
  std::vector<Verdict> verdicts;
};

// Re-executes the recorded schedules against the chain's behavior maps.
// Throws TraceDivergence when a tuple's snapshot disagrees with the chain.
std::vector<ReplayStep> replay_trace(const BuildTrace& trace, const BuildChain& chain);

struct BuildCheck {
  BuildIndex index = 0;
  bool program = false;
  bool specs = false;
  bool tests = false;
  bool budget = false;
  bool q_value = false;
  bool schedule = false;
  bool verdicts = false;

  bool verified() const {
    return program && specs && tests && budget && q_value && schedule && verdicts;
  }
};

struct CompletenessReport {
  std::string strategy;
  std::vector<BuildCheck> builds;

  bool all_verified() const;
};

/// Field-by-field check that a recorded trace matches the chain artifacts
/// and an independent live run of a fresh strategy instance, and that
/// replaying it reproduces the live verdicts.
CompletenessReport check_completeness(const StrategyFactory& factory,
                                      const Scenario& scenario,
                                      std::span<const Window> windows,
                                      MetricKind metric);

}  // namespace regchain
