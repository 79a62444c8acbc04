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
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "regchain/budget.hpp"
#include "regchain/history.hpp"
#include "regchain/techniques.hpp"

namespace regchain {

struct DepEdge {
  std::string from;
  std::string to;

  friend auto operator<=>(const DepEdge&, const DepEdge&) = default;
};

struct ChangeSet;

/// Static class-level dependency graph. Tests point at the classes they
/// touch; classes point at the classes they reference.
///
/// Test ids and class ids live in separate namespaces. Values are immutable;
/// update_graph returns a new graph.
class DepGraph {
 public:
  DepGraph() = default;

  const std::set<ClassId>& classes() const { return classes_; }
  const std::set<TestId>& tests() const { return tests_; }
  // Edge sets, duplicates collapsed.
  const std::set<DepEdge>& class_deps() const { return class_deps_; }
  const std::set<DepEdge>& test_links() const { return test_links_; }

  bool has_class(const ClassId& c) const { return classes_.contains(c); }
  bool has_test(const TestId& t) const { return tests_.contains(t); }

  friend bool operator==(const DepGraph&, const DepGraph&) = default;

 private:
  friend DepGraph build_graph(std::span<const ClassId>, std::span<const TestId>,
                              std::span<const DepEdge>, std::span<const DepEdge>);
  friend DepGraph update_graph(const DepGraph&, const ChangeSet&);

  std::set<ClassId> classes_;
  std::set<TestId> tests_;
  std::set<DepEdge> class_deps_;
  std::set<DepEdge> test_links_;
};

// Throws kMalformedGraph on a self-loop or an endpoint that is not a declared
// node of the right kind.
DepGraph build_graph(std::span<const ClassId> classes,
                     std::span<const TestId> tests,
                     std::span<const DepEdge> class_deps,
                     std::span<const DepEdge> test_links);

/// Edits between two builds. Applied in order: node removals (with their
/// incident edges), edge removals, node additions, edge additions.
struct ChangeSet {
  std::set<ClassId> changed_classes;
  std::set<ClassId> added_classes;
  std::set<TestId> added_tests;
  std::set<ClassId> removed_classes;
  std::set<TestId> removed_tests;
  std::vector<DepEdge> added_class_deps;
  std::vector<DepEdge> added_test_links;
  std::vector<DepEdge> removed_class_deps;
  std::vector<DepEdge> removed_test_links;

  bool empty() const;
};

// Throws kUnknownNode when removing a missing node or when a changed class is
// absent after the update; kMalformedGraph for a bad added edge.
DepGraph update_graph(const DepGraph& g, const ChangeSet& changes);

// Candidate tests from which some changed class is reachable. Sorted by id.
std::vector<TestId> affected_tests(const DepGraph& g,
                                   const std::set<ClassId>& changed_classes,
                                   std::span<const TestId> candidates);

/// Score of a test from its history; higher runs earlier.
using RankingFn =
    std::function<double(const TestId&, const ExecutionHistory&)>;

/// Recency-weighted failure rate over the last `window` executions.
///
/// The execution of age a (0 = most recent) has weight 1 / (a + 1); the score
/// is sum(weight * failed) / sum(weight). Tests with no history score
/// `cold_start`.
struct RecentFailureRanking {
  std::size_t window = 5;
  double cold_start = 0.5;

  double operator()(const TestId& test, const ExecutionHistory& history) const;
};

// Ranks by score (descending), then duration (ascending), then id, and keeps
// the longest prefix that fits the window.
Schedule order_by_history(std::span<const TestCase> selected,
                          const ExecutionHistory& history, const Window& window,
                          const RankingFn& ranking = RecentFailureRanking{});

}  // namespace regchain
