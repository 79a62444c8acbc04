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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regchain/budget.hpp"
#include "regchain/model.hpp"

namespace regchain {

class DepGraph;

using FaultId = std::string;
using ClassId = std::string;

// fault id -> tests able to detect it
using FaultMatrix = std::map<FaultId, std::set<TestId>>;
// story id -> tests any one of which satisfies the story
using RequirementCoverage = std::map<StoryId, std::set<TestId>>;

/// Data a quality metric may consult besides the order itself.
struct EvalContext {
  FaultMatrix faults;
  RequirementCoverage coverage;
};

/// A named evaluation function over ordered test sequences. Higher is better;
/// nullopt means the value is undefined for that sequence.
class QualityMetric {
 public:
  using Fn = std::function<std::optional<double>(std::span<const TestId>)>;

  QualityMetric(std::string name, Fn fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  std::optional<double> operator()(std::span<const TestId> order) const {
    return fn_(order);
  }

  // Same argmax, values multiplied by `factor` (> 0).
  QualityMetric scaled(double factor) const;

 private:
  std::string name_;
  Fn fn_;
};

enum class MetricKind { kApfd, kFaultCount, kCoverage };

std::string_view to_string(MetricKind kind);
// Throws kConfiguration for an unknown name.
MetricKind parse_metric_kind(std::string_view name);

// "apfd": undefined for an empty order or when no faults are active.
// "fault-count": number of faults with a detecting test in the order.
// "coverage": fraction of requirements hit; undefined with no requirements.
QualityMetric bind_metric(MetricKind kind, const EvalContext& context);

struct ApfdReport {
  double value = 0.0;
  // Faults with no detecting test in the order; each counted at position n+1.
  std::vector<FaultId> undetected;
};

/// APFD = 1 - sum(TF_i) / (n * m) + 1 / (2n).
///
/// Throws kUndefinedMetric when there are no faults, or when the order is
/// empty.
ApfdReport apfd(std::span<const TestId> order, const FaultMatrix& faults);

struct ScheduledTest {
  TestId id;
  Duration duration;

  friend bool operator==(const ScheduledTest&, const ScheduledTest&) = default;
};

/// An ordered, duplicate-free list of tests with its total cost.
struct Schedule {
  std::vector<ScheduledTest> entries;
  Duration total_cost;
  std::string technique;
  std::map<std::string, std::string> params;
  // Set when a bounded window could not fit even one candidate.
  bool budget_starved = false;

  std::vector<TestId> ids() const;
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Looks each id up in `pool` for its cost. Throws kUndefinedExecution for an
// id not in the pool and kMalformedBuild for a repeated id.
Schedule make_schedule(std::span<const TestId> order,
                       std::span<const TestCase> pool, std::string technique);

// Longest prefix whose cumulative duration fits the window.
Schedule schedule_under_budget(const Schedule& order, const Window& window);

enum class Engine { kExact, kGreedy };

std::string_view to_string(Engine engine);
// "exact" or "greedy"; anything else raises kConfiguration.
Engine parse_engine(std::string_view name);

inline constexpr std::size_t kRtmExactLimit = 15;
inline constexpr std::size_t kRtpExactLimit = 8;

/// Smallest set of candidates hitting every requirement.
///
/// Greedy picks the test covering the most uncovered requirements (ties by
/// id). Exact enumerates subsets by size and returns the lexicographically
/// first minimum cover; it is limited to 15 candidates. The result is sorted.
std::vector<TestId> rtm_minimize(std::span<const TestCase> candidates,
                                 const RequirementCoverage& coverage,
                                 Engine engine = Engine::kGreedy);

bool covers_all(std::span<const TestId> tests, const RequirementCoverage& coverage);

struct RetestAllSelector {};

struct DependencyGraphSelector {
  std::shared_ptr<const DepGraph> graph;
  std::set<ClassId> changed_classes;
};

struct RandomKSelector {
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

using Selector =
    std::variant<RetestAllSelector, DependencyGraphSelector, RandomKSelector>;

struct SelectorOptions {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::shared_ptr<const DepGraph> graph;
  std::set<ClassId> changed_classes;
};

// Names: "retest-all", "depgraph", "random-k". Throws kConfiguration otherwise.
Selector parse_selector(std::string_view name, SelectorOptions options = {});

// Subset of candidate_set(prev, next), sorted by id.
std::vector<TestId> rts_select(const Build& prev, const Build& next,
                               const Selector& selector);

/// Order maximizing the metric.
///
/// Exact enumerates every permutation (at most 8 candidates) and keeps the
/// lexicographically first argmax; undefined values rank below every defined
/// one. Greedy appends, one at a time, the test whose addition gives the
/// highest metric value, breaking ties by id.
Schedule rtp_prioritize(std::span<const TestCase> candidates,
                        const QualityMetric& metric, Engine engine);

}  // namespace regchain
