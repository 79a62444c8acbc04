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

#include "regchain/depgraph.hpp"

#include <algorithm>
#include <deque>

namespace regchain {

namespace {

void check_class_dep(const std::set<ClassId>& classes, const DepEdge& e) {
  if (e.from == e.to) {
    throw Error(ErrorCode::kMalformedGraph, "self-loop on class '" + e.from + "'");
  }
  if (!classes.contains(e.from) || !classes.contains(e.to)) {
    throw Error(ErrorCode::kMalformedGraph,
                "class edge " + e.from + " -> " + e.to + " has a dangling endpoint");
  }
}

void check_test_link(const std::set<TestId>& tests,
                     const std::set<ClassId>& classes, const DepEdge& e) {
  if (!tests.contains(e.from) || !classes.contains(e.to)) {
    throw Error(ErrorCode::kMalformedGraph,
                "test link " + e.from + " -> " + e.to + " has a dangling endpoint");
  }
}

}  // namespace

DepGraph build_graph(std::span<const ClassId> classes,
                     std::span<const TestId> tests,
                     std::span<const DepEdge> class_deps,
                     std::span<const DepEdge> test_links) {
  DepGraph g;
  for (const auto& c : classes) {
    if (c.empty()) throw Error(ErrorCode::kMalformedGraph, "empty class id");
    g.classes_.insert(c);
  }
  for (const auto& t : tests) {
    if (t.empty()) throw Error(ErrorCode::kMalformedGraph, "empty test id");
    g.tests_.insert(t);
  }
  for (const auto& e : class_deps) {
    check_class_dep(g.classes_, e);
    g.class_deps_.insert(e);
  }
  for (const auto& e : test_links) {
    check_test_link(g.tests_, g.classes_, e);
    g.test_links_.insert(e);
  }
  return g;
}

bool ChangeSet::empty() const {
  return changed_classes.empty() && added_classes.empty() && added_tests.empty() &&
         removed_classes.empty() && removed_tests.empty() &&
         added_class_deps.empty() && added_test_links.empty() &&
         removed_class_deps.empty() && removed_test_links.empty();
}

DepGraph update_graph(const DepGraph& g, const ChangeSet& changes) {
  DepGraph out = g;
  for (const auto& c : changes.removed_classes) {
    if (!out.classes_.erase(c)) {
      throw Error(ErrorCode::kUnknownNode, "cannot remove unknown class '" + c + "'");
    }
    std::erase_if(out.class_deps_,
                  [&](const DepEdge& e) { return e.from == c || e.to == c; });
    std::erase_if(out.test_links_, [&](const DepEdge& e) { return e.to == c; });
  }
  for (const auto& t : changes.removed_tests) {
    if (!out.tests_.erase(t)) {
      throw Error(ErrorCode::kUnknownNode, "cannot remove unknown test '" + t + "'");
    }
    std::erase_if(out.test_links_, [&](const DepEdge& e) { return e.from == t; });
  }
  for (const auto& e : changes.removed_class_deps) out.class_deps_.erase(e);
  for (const auto& e : changes.removed_test_links) out.test_links_.erase(e);

  out.classes_.insert(changes.added_classes.begin(), changes.added_classes.end());
  out.tests_.insert(changes.added_tests.begin(), changes.added_tests.end());
  for (const auto& e : changes.added_class_deps) {
    check_class_dep(out.classes_, e);
    out.class_deps_.insert(e);
  }
  for (const auto& e : changes.added_test_links) {
    check_test_link(out.tests_, out.classes_, e);
    out.test_links_.insert(e);
  }
  for (const auto& c : changes.changed_classes) {
    if (!out.classes_.contains(c)) {
      throw Error(ErrorCode::kUnknownNode, "changed class '" + c + "' is not in the graph");
    }
  }
  return out;
}

std::vector<TestId> affected_tests(const DepGraph& g,
                                   const std::set<ClassId>& changed_classes,
                                   std::span<const TestId> candidates) {
  for (const auto& c : changed_classes) {
    if (!g.has_class(c)) {
      throw Error(ErrorCode::kUnknownNode, "changed class '" + c + "' is not in the graph");
    }
  }
  // Walk class edges backwards: every class that can reach a changed class is
  // impacted.
  std::map<ClassId, std::vector<ClassId>> referenced_by;
  for (const auto& e : g.class_deps()) referenced_by[e.to].push_back(e.from);
  std::set<ClassId> impacted(changed_classes.begin(), changed_classes.end());
  std::deque<ClassId> frontier(changed_classes.begin(), changed_classes.end());
  while (!frontier.empty()) {
    const ClassId c = frontier.front();
    frontier.pop_front();
    auto it = referenced_by.find(c);
    if (it == referenced_by.end()) continue;
    for (const auto& from : it->second) {
      if (impacted.insert(from).second) frontier.push_back(from);
    }
  }
  std::set<TestId> hit;
  for (const auto& e : g.test_links()) {
    if (impacted.contains(e.to)) hit.insert(e.from);
  }
  std::vector<TestId> out;
  for (const auto& t : candidates) {
    if (hit.contains(t)) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double RecentFailureRanking::operator()(const TestId& test,
                                        const ExecutionHistory& history) const {
  const auto& log = history.of(test);
  if (log.empty() || window == 0) return cold_start;
  double weighted = 0.0;
  double total = 0.0;
  const std::size_t n = std::min(window, log.size());
  for (std::size_t age = 0; age < n; ++age) {
    const auto& rec = log[log.size() - 1 - age];
    const double w = 1.0 / static_cast<double>(age + 1);
    total += w;
    if (rec.failed) weighted += w;
  }
  return weighted / total;
}

Schedule order_by_history(std::span<const TestCase> selected,
                          const ExecutionHistory& history, const Window& window,
                          const RankingFn& ranking) {
  struct Ranked {
    const TestCase* test;
    double score;
    Duration duration;
  };
  std::vector<Ranked> ranked;
  for (const auto& t : selected) ranked.push_back({&t, ranking(t.id, history), cost(t)});
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.duration != b.duration) return a.duration < b.duration;
    return a.test->id < b.test->id;
  });
  std::vector<TestId> order;
  for (const auto& r : ranked) order.push_back(r.test->id);
  auto full = make_schedule(order, selected, "depgraph-history");
  auto s = schedule_under_budget(full, window);
  s.budget_starved = !selected.empty() && s.empty();
  return s;
}

}  // namespace regchain
