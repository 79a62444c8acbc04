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

#include <gtest/gtest.h>

#include "regchain/depgraph.hpp"
#include "support.hpp"

namespace {

using namespace regchain;
using support::tc;

DepGraph chain_graph() {
  // t1 -> A -> B -> C, t2 -> C, t3 -> D
  const std::vector<ClassId> classes{"A", "B", "C", "D"};
  const std::vector<TestId> tests{"t1", "t2", "t3"};
  const std::vector<DepEdge> deps{{"A", "B"}, {"B", "C"}};
  const std::vector<DepEdge> links{{"t1", "A"}, {"t2", "C"}, {"t3", "D"}};
  return build_graph(classes, tests, deps, links);
}

TEST(DepGraph, RejectsMalformedEdges) {
  const std::vector<ClassId> classes{"A"};
  const std::vector<TestId> tests{"t"};
  const std::vector<DepEdge> self{{"A", "A"}};
  const std::vector<DepEdge> dangling{{"A", "Z"}};
  const std::vector<DepEdge> bad_link{{"t", "Z"}};
  const std::vector<DepEdge> none;
  EXPECT_ERROR_CODE(build_graph(classes, tests, self, none), ErrorCode::kMalformedGraph);
  EXPECT_ERROR_CODE(build_graph(classes, tests, dangling, none), ErrorCode::kMalformedGraph);
  EXPECT_ERROR_CODE(build_graph(classes, tests, none, bad_link), ErrorCode::kMalformedGraph);
}

TEST(AffectedTests, FollowsTransitiveDependencies) {
  const auto g = chain_graph();
  const std::vector<TestId> all{"t1", "t2", "t3"};
  EXPECT_EQ(affected_tests(g, {"C"}, all), (std::vector<TestId>{"t1", "t2"}));
  EXPECT_EQ(affected_tests(g, {"A"}, all), (std::vector<TestId>{"t1"}));
  EXPECT_EQ(affected_tests(g, {"D"}, all), (std::vector<TestId>{"t3"}));
  EXPECT_TRUE(affected_tests(g, {}, all).empty());
  const std::vector<TestId> only_t2{"t2"};
  EXPECT_EQ(affected_tests(g, {"C"}, only_t2), only_t2);
  EXPECT_ERROR_CODE(affected_tests(g, {"Q"}, all), ErrorCode::kUnknownNode);
}

TEST(UpdateGraph, AppliesEditsInOrder) {
  const auto g = chain_graph();
  ChangeSet cs;
  cs.removed_classes = {"B"};
  cs.added_classes = {"E"};
  cs.added_class_deps = {{"A", "E"}};
  cs.changed_classes = {"E"};
  const auto h = update_graph(g, cs);
  EXPECT_FALSE(h.has_class("B"));
  EXPECT_TRUE(h.has_class("E"));
  const std::vector<TestId> all{"t1", "t2", "t3"};
  EXPECT_EQ(affected_tests(h, {"C"}, all), (std::vector<TestId>{"t2"}));
  EXPECT_EQ(affected_tests(h, {"E"}, all), (std::vector<TestId>{"t1"}));

  ChangeSet missing;
  missing.removed_tests = {"nope"};
  EXPECT_ERROR_CODE(update_graph(g, missing), ErrorCode::kUnknownNode);
  ChangeSet ghost;
  ghost.changed_classes = {"Z"};
  EXPECT_ERROR_CODE(update_graph(g, ghost), ErrorCode::kUnknownNode);
  EXPECT_TRUE(ChangeSet{}.empty());
}

// Fixed-point closure over an adjacency matrix; shares nothing with the library.
std::set<TestId> closure_oracle(int n_classes, const std::vector<std::pair<int, int>>& deps,
                                const std::vector<std::pair<int, int>>& links,
                                const std::set<int>& changed) {
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n_classes),
                                       std::vector<bool>(static_cast<std::size_t>(n_classes)));
  for (int i = 0; i < n_classes; ++i) reach[i][i] = true;
  for (auto [a, b] : deps) reach[a][b] = true;
  for (int k = 0; k < n_classes; ++k)
    for (int i = 0; i < n_classes; ++i)
      for (int j = 0; j < n_classes; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::set<TestId> out;
  for (auto [t, c] : links) {
    for (int x : changed) {
      if (reach[c][x]) out.insert("t" + std::to_string(t));
    }
  }
  return out;
}

TEST(AffectedTestsProperty, MatchesClosureAndGrowsWithChanges) {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const int nc = static_cast<int>(rng.between(1, 7));
    const int nt = static_cast<int>(rng.between(1, 5));
    std::vector<ClassId> classes;
    std::vector<TestId> tests;
    for (int i = 0; i < nc; ++i) classes.push_back("C" + std::to_string(i));
    for (int i = 0; i < nt; ++i) tests.push_back("t" + std::to_string(i));
    std::vector<std::pair<int, int>> deps, links;
    std::vector<DepEdge> dep_edges, link_edges;
    for (int a = 0; a < nc; ++a)
      for (int b = 0; b < nc; ++b)
        if (a != b && rng.bernoulli(0.25)) {
          deps.emplace_back(a, b);
          dep_edges.push_back({classes[a], classes[b]});
        }
    for (int t = 0; t < nt; ++t)
      for (int c = 0; c < nc; ++c)
        if (rng.bernoulli(0.3)) {
          links.emplace_back(t, c);
          link_edges.push_back({tests[t], classes[c]});
        }
    const auto g = build_graph(classes, tests, dep_edges, link_edges);

    std::set<int> changed;
    std::set<ClassId> changed_ids;
    std::vector<TestId> previous;
    for (int step = 0; step < nc; ++step) {
      const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(nc)));
      changed.insert(c);
      changed_ids.insert(classes[c]);
      const auto got = affected_tests(g, changed_ids, tests);
      const auto want = closure_oracle(nc, deps, links, changed);
      ASSERT_EQ(std::set<TestId>(got.begin(), got.end()), want);
      ASSERT_TRUE(std::includes(got.begin(), got.end(), previous.begin(), previous.end()));
      previous = got;
    }
  }
}

TEST(RecentFailureRanking, WeightsRecentExecutions) {
  ExecutionHistory h;
  h.record("a", {1, true, Duration::units(1)});
  h.record("a", {2, false, Duration::units(1)});
  const RecentFailureRanking rank;
  // ages 0 (pass, weight 1) and 1 (fail, weight 1/2)
  EXPECT_DOUBLE_EQ(rank("a", h), (0.5) / (1.5));
  EXPECT_DOUBLE_EQ(rank("new", h), 0.5);
  EXPECT_ERROR_CODE(h.record("a", {1, true, Duration{}}), ErrorCode::kOrdering);
  EXPECT_EQ(h.last_execution("a"), 2);
  EXPECT_FALSE(h.last_execution("zz").has_value());
}

TEST(OrderByHistory, ScoreThenDurationThenId) {
  ExecutionHistory h;
  h.record("c", {1, true, Duration::units(1)});
  h.record("b", {1, false, Duration::units(1)});
  const std::vector<TestCase> sel{tc("a", 3), tc("b", 1), tc("c", 5), tc("d", 1)};
  const auto s = order_by_history(sel, h, Window::unbounded());
  // c: 1.0; a, d: cold 0.5 (d shorter); b: 0.0
  EXPECT_EQ(s.ids(), (std::vector<TestId>{"c", "d", "a", "b"}));
  EXPECT_EQ(s.technique, "depgraph-history");
  const auto cut = order_by_history(sel, h, Window::of_budget(Duration::units(6.5)));
  EXPECT_EQ(cut.ids(), (std::vector<TestId>{"c", "d"}));
}

}  // namespace
