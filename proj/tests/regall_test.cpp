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

#include "regchain/regall.hpp"
#include "support.hpp"

namespace {

using namespace regchain;
using support::build;
using support::stories;
using support::tc;

TEST(RegAll, ConsistentOverlapGivesOne) {
  const Build a = build(1, 1, stories({"s1"}), {tc("x", 1), tc("y", 1)});
  const Build b = build(2, 2, stories({"s1"}), {tc("x", 1), tc("y", 1)});
  const auto r = reg_all(a, b, Window::unbounded());
  EXPECT_EQ(r.result, 1);
  EXPECT_FALSE(r.vacuous);
  EXPECT_FALSE(r.first_inconsistent.has_value());
  ASSERT_EQ(r.verdicts.size(), 2u);
  EXPECT_TRUE(r.verdicts[0].consistent);
}

TEST(RegAll, DivergenceGivesZeroAndNamesTheTest) {
  const Build a = build(1, 1, stories({"s1"}), {tc("x", 1), tc("y", 1), tc("z", 1)});
  const Build b = build(2, 2, stories({"s1"}), {tc("x", 1), tc("y", 1), tc("z", 1)}, -1,
                        {{"y", "boom"}, {"z", "boom"}});
  const auto r = reg_all(a, b, Window::unbounded());
  EXPECT_EQ(r.result, 0);
  EXPECT_EQ(r.first_inconsistent, "y");
  EXPECT_EQ(r.verdicts[1].outcome_prev, "ok");
  EXPECT_EQ(r.verdicts[1].outcome_next, "boom");
}

TEST(RegAll, EmptyOverlapHoldsVacuously) {
  const Build a = build(1, 1, stories({"s1"}), {tc("x", 1)});
  const Build b = build(2, 2, stories({"s1"}), {tc("y", 1)});
  const auto r = reg_all(a, b, Window::unbounded());
  EXPECT_EQ(r.result, 1);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.verdicts.empty());
}

TEST(RegAll, RequiresUnboundedWindow) {
  const Build a = build(1, 1, {}, {tc("x", 1)});
  const Build b = build(2, 1, {}, {tc("x", 1)});
  EXPECT_ERROR_CODE(reg_all(a, b, Window::of_budget(Duration::units(1000))),
                    ErrorCode::kRequiresInfiniteWindow);
}

TEST(Execute, KeepsOrderAndRejectsMissingBehavior) {
  const Build a = build(1, 1, {}, {tc("x", 1), tc("y", 1)});
  const Build b(2, ProgramVersion(2, {{"y", "ok"}}), SpecSet{}, {tc("x", 1), tc("y", 1)},
                Duration::units(20));
  const std::vector<TestId> order{"y"};
  EXPECT_EQ(execute(order, a, b).front().test_id, "y");
  EXPECT_ERROR_CODE(evaluate("x", a, b), ErrorCode::kUndefinedExecution);
}

TEST(RegAllProperty, ZeroIffSomeOverlapOutcomeDiffers) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TestCase> ta, tb;
    std::map<TestId, Outcome> ba, bb;
    for (int i = 0; i < 8; ++i) {
      const auto id = support::tid(static_cast<std::size_t>(i));
      const bool in_a = rng.bernoulli(0.7);
      const bool in_b = rng.bernoulli(0.7);
      if (in_a) {
        ta.push_back(tc(id, 1));
        ba[id] = "v" + std::to_string(rng.below(2));
      }
      if (in_b) {
        tb.push_back(tc(id, 1));
        bb[id] = "v" + std::to_string(rng.below(2));
      }
    }
    bool diverged = false;
    for (const auto& [id, out] : ba) {
      if (bb.contains(id) && bb[id] != out) diverged = true;
    }
    const Build a(1, ProgramVersion(1, ba), SpecSet{}, ta, Duration::units(1));
    const Build b(2, ProgramVersion(2, bb), SpecSet{}, tb, Duration::units(2));
    ASSERT_EQ(reg_all(a, b, Window::unbounded()).result, diverged ? 0 : 1);
  }
}

}  // namespace
