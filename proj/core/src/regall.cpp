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

#include "regchain/regall.hpp"

namespace regchain {

Verdict evaluate(const TestId& test, const Build& prev, const Build& next) {
  Verdict v;
  v.test_id = test;
  v.outcome_prev = prev.program().run(test);
  v.outcome_next = next.program().run(test);
  v.consistent = v.outcome_prev == v.outcome_next;
  return v;
}

std::vector<Verdict> execute(std::span<const TestId> tests, const Build& prev,
                             const Build& next) {
  std::vector<Verdict> out;
  out.reserve(tests.size());
  for (const auto& id : tests) out.push_back(evaluate(id, prev, next));
  return out;
}

RegAllReport reg_all(const Build& prev, const Build& next, const Window& window) {
  if (!window.is_unbounded()) {
    throw Error(ErrorCode::kRequiresInfiniteWindow,
                "retest-all is only defined for an unbounded window");
  }
  const auto candidates = candidate_set(prev, next);
  RegAllReport report;
  report.vacuous = candidates.tests.empty();
  for (const auto& t : candidates.tests) {
    report.verdicts.push_back(evaluate(t.id, prev, next));
    if (!report.verdicts.back().consistent && !report.first_inconsistent) {
      report.first_inconsistent = t.id;
      report.result = 0;
    }
  }
  return report;
}

}  // namespace regchain
