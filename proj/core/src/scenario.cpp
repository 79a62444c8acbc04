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

#include "regchain/scenario.hpp"

namespace regchain {

std::vector<ClassId> Scenario::classes() const {
  std::set<ClassId> out;
  for (const auto& e : class_deps) {
    out.insert(e.from);
    out.insert(e.to);
  }
  for (const auto& e : test_links) out.insert(e.to);
  for (const auto& [_, changed] : changed_classes) {
    out.insert(changed.begin(), changed.end());
  }
  return {out.begin(), out.end()};
}

std::vector<TestId> Scenario::all_tests() const {
  std::set<TestId> out;
  for (const auto& b : chain.builds()) {
    for (const auto& t : b.tests()) out.insert(t.id);
  }
  for (const auto& e : test_links) out.insert(e.from);
  return {out.begin(), out.end()};
}

DepGraph Scenario::graph() const {
  const auto cls = classes();
  const auto tests = all_tests();
  return build_graph(cls, tests, class_deps, test_links);
}

EvalContext Scenario::context_for(const Build& prev, const Build& next) const {
  const auto candidates = candidate_set(prev, next);
  std::set<TestId> pool;
  for (const auto& t : candidates.tests) pool.insert(t.id);

  EvalContext ctx;
  for (const auto& f : faults) {
    if (f.build != 0 && f.build != next.index()) continue;
    std::set<TestId> detecting;
    for (const auto& t : f.detecting) {
      if (pool.contains(t)) detecting.insert(t);
    }
    if (!detecting.empty()) ctx.faults[f.id] = std::move(detecting);
  }
  for (const auto& [story, tests] : coverage) {
    if (!prev.specs().contains(story) || !next.specs().contains(story)) continue;
    std::set<TestId> kept;
    for (const auto& t : tests) {
      if (pool.contains(t)) kept.insert(t);
    }
    ctx.coverage[story] = std::move(kept);
  }
  return ctx;
}

const std::set<ClassId>& Scenario::changes_at(BuildIndex index) const {
  static const std::set<ClassId> kNone;
  auto it = changed_classes.find(index);
  return it == changed_classes.end() ? kNone : it->second;
}

}  // namespace regchain
