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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regchain/arta.hpp"
#include "regchain/retecs.hpp"
#include "regchain/scenario.hpp"

namespace regchain {

/// How the regression window of each transition is sized.
struct WindowPolicy {
  enum class Kind {
    kUnbounded,
    kFixed,          // same budget every transition
    kList,           // one budget per transition
    kChain,          // gap between consecutive ready times
    kSuiteFraction,  // fraction of the first build's total test cost
  };

  Kind kind = Kind::kUnbounded;
  Duration fixed;
  std::vector<Budget> budgets;
  double fraction = 1.0;

  // "inf", "unbounded", "chain", "fixed:<units>", "fraction:<f>",
  // "list:<u>,<u>,...", or a cadence preset: "commit" (5 units),
  // "nightly" (30), "sprint" (120), "release" (600).
  static WindowPolicy parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const WindowPolicy&, const WindowPolicy&) = default;
};

std::vector<Window> windows_for(const WindowPolicy& policy, const BuildChain& chain);

struct ScenarioConfig {
  std::uint64_t seed = 1;
  int n_builds = 10;
  int n_tests = 20;
  int n_stories = 5;
  int n_classes = 8;
  int builds_per_iteration = 3;
  // Probability of each transition case; must sum to 1.
  std::map<TransitionKind, double> mix = {
      {TransitionKind::kPeriodicBuild, 0.2},
      {TransitionKind::kNewFeature, 0.2},
      {TransitionKind::kDefectFix, 0.3},
      {TransitionKind::kTechDebt, 0.15},
      {TransitionKind::kFeatureWithoutTest, 0.15},
  };
  WindowPolicy window;
  // Per program-changing transition, each of three fault slots fires with
  // this probability. Defect fixes always carry at least one fault.
  double fault_rate = 0.3;
  // Share of the initial tests that attract most injected faults.
  double fault_prone_fraction = 0.2;
  std::string strategy = "retest-all";
  std::size_t random_k = 5;
  AgentParams agent;
  Engine engine = Engine::kGreedy;
  std::string metric = "apfd";

  // Throws kConfiguration naming the offending field.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct GeneratedScenario {
  Scenario scenario;
  // Case sampled for each transition, in chain order.
  std::vector<TransitionKind> kinds;
};

/// Deterministic synthetic chain. Every transition realizes the sampled case:
/// periodic builds repeat the program, specs and tests; every other case
/// issues a new program id, and injected faults change the outcome of their
/// detecting tests in the new program.
GeneratedScenario generate_chain(const ScenarioConfig& cfg);

// Names: "retest-all", "random-k", "retecs", "depgraph".
StrategyFactory make_strategy(const ScenarioConfig& cfg, const Scenario& scenario);

struct ReportRow {
  BuildIndex build = 0;
  TransitionKind kind = TransitionKind::kPeriodicBuild;
  std::size_t candidates = 0;
  std::vector<TestId> schedule;
  Duration cost;
  Budget budget = Budget::unbounded();
  std::optional<double> q_value;
  std::optional<double> apfd;
  std::size_t faults_active = 0;
  std::size_t faults_detected = 0;
  std::size_t failures = 0;
  // Only for unbounded windows: retest-all result, and whether the executed
  // verdicts equal its verdicts.
  std::optional<int> regall;
  std::optional<bool> regall_equivalent;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::string strategy;
  std::string metric;
  std::vector<ReportRow> rows;  // one per transition
  std::optional<double> mean_apfd;
  Duration total_cost;
  std::optional<double> recall;  // detected / active faults
  BuildTrace trace;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport run_scenario(const ScenarioConfig& cfg);

// Independent runs on up to `threads` worker threads; results in input order.
std::vector<RunReport> run_scenarios(const std::vector<ScenarioConfig>& configs,
                                     unsigned threads);

}  // namespace regchain
