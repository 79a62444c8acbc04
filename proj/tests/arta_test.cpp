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

#include "regchain/arta.hpp"
#include "regchain/simulator.hpp"
#include "support.hpp"

namespace {

using namespace regchain;

class Rogue final : public ArtaStrategy {
 public:
  enum class Mode { kForeign, kOverrun, kDuplicate };
  explicit Rogue(Mode mode) : mode_(mode) {}
  std::string name() const override { return "rogue"; }
  Schedule plan(const TransitionInput& input) override {
    Schedule s;
    switch (mode_) {
      case Mode::kForeign:
        s.entries.push_back({"not-a-test", Duration::units(1)});
        break;
      case Mode::kOverrun:
        for (const auto& t : input.candidates) s.entries.push_back({t.id, t.duration()});
        break;
      case Mode::kDuplicate:
        s.entries.push_back({input.candidates[0].id, input.candidates[0].duration()});
        s.entries.push_back({input.candidates[0].id, input.candidates[0].duration()});
        break;
    }
    return s;
  }

 private:
  Mode mode_;
};

ScenarioConfig small_config(std::string strategy, std::uint64_t seed = 4) {
  ScenarioConfig cfg;
  cfg.seed = seed;
  cfg.n_builds = 6;
  cfg.n_tests = 8;
  cfg.strategy = std::move(strategy);
  cfg.window = WindowPolicy::parse("fraction:0.5");
  return cfg;
}

TEST(RunLive, EnforcesTheContract) {
  const auto cfg = small_config("retest-all");
  const auto gen = generate_chain(cfg);
  const auto windows = windows_for(cfg.window, gen.scenario.chain);
  for (auto mode : {Rogue::Mode::kForeign, Rogue::Mode::kOverrun, Rogue::Mode::kDuplicate}) {
    Rogue rogue(mode);
    try {
      run_live(rogue, gen.scenario, windows, MetricKind::kApfd);
      FAIL() << "expected a violation";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kArtaViolation);
      EXPECT_NE(std::string(e.what()).find("build 2"), std::string::npos) << e.what();
    }
  }
  RetestAllStrategy ok;
  const std::vector<Window> too_few(1, Window::unbounded());
  EXPECT_ERROR_CODE(run_live(ok, gen.scenario, too_few, MetricKind::kApfd),
                    ErrorCode::kConfiguration);
}

TEST(Trace, FirstTupleIsTheBaseline) {
  const auto cfg = small_config("retest-all");
  const auto gen = generate_chain(cfg);
  RetestAllStrategy s;
  const auto trace = record_trace(s, gen.scenario, windows_for(cfg.window, gen.scenario.chain),
                                  MetricKind::kApfd);
  ASSERT_EQ(trace.tuples.size(), gen.scenario.chain.size());
  const auto& first = trace.tuples.front();
  EXPECT_EQ(first.index, 1);
  EXPECT_TRUE(first.schedule.empty());
  EXPECT_TRUE(first.budget.is_unbounded());
  EXPECT_FALSE(first.q_value.has_value());
  EXPECT_EQ(trace.strategy, "retest-all");
}

class TraceStrategies : public ::testing::TestWithParam<std::string> {};

TEST_P(TraceStrategies, ReplayReproducesLiveVerdicts) {
  const auto cfg = small_config(GetParam());
  const auto gen = generate_chain(cfg);
  const auto windows = windows_for(cfg.window, gen.scenario.chain);
  const auto factory = make_strategy(cfg, gen.scenario);
  auto live = factory();
  const auto steps = run_live(*live, gen.scenario, windows, MetricKind::kApfd);
  const auto trace = make_trace(live->name(), gen.scenario, windows, steps);
  const auto replayed = replay_trace(trace, gen.scenario.chain);
  ASSERT_EQ(replayed.size(), steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    EXPECT_EQ(replayed[k].verdicts, steps[k].verdicts);
    EXPECT_EQ(replayed[k].schedule.ids(), steps[k].schedule.ids());
  }
  const auto report = check_completeness(factory, gen.scenario, windows, MetricKind::kApfd);
  EXPECT_TRUE(report.all_verified());
  EXPECT_EQ(report.builds.size(), gen.scenario.chain.size());
}

INSTANTIATE_TEST_SUITE_P(AllBuiltIns, TraceStrategies,
                         ::testing::Values("retest-all", "random-k", "retecs", "depgraph"));

class Tampering : public ::testing::Test {
 protected:
  void SetUp() override {
    cfg = small_config("retest-all");
    gen = generate_chain(cfg);
    RetestAllStrategy s;
    trace = record_trace(s, gen.scenario, windows_for(cfg.window, gen.scenario.chain),
                         MetricKind::kApfd);
  }

  void expect_divergence(const BuildTrace& t, BuildIndex build, const std::string& field) {
    try {
      replay_trace(t, gen.scenario.chain);
      FAIL() << "expected divergence at " << field;
    } catch (const TraceDivergence& e) {
      EXPECT_EQ(e.build(), build);
      EXPECT_EQ(e.field(), field);
      EXPECT_EQ(e.code(), ErrorCode::kTraceDivergence);
    }
  }

  ScenarioConfig cfg;
  GeneratedScenario gen;
  BuildTrace trace;
};

TEST_F(Tampering, EachFieldIsChecked) {
  auto t = trace;
  t.tuples[2].program_id += 100;
  expect_divergence(t, 3, "program_id");

  t = trace;
  t.tuples[1].test_ids.push_back("zz");
  expect_divergence(t, 2, "test_ids");

  t = trace;
  t.tuples[1].spec_ids.clear();
  expect_divergence(t, 2, "spec_ids");

  t = trace;
  t.tuples[3].schedule.push_back("zz");
  expect_divergence(t, 4, "schedule");

  t = trace;
  t.tuples[1].budget = Budget::of(Duration::micros(1));
  expect_divergence(t, 2, "budget");

  t = trace;
  t.tuples.pop_back();
  expect_divergence(t, static_cast<BuildIndex>(gen.scenario.chain.size()), "length");

  t = trace;
  t.tuples[0].index = 9;
  expect_divergence(t, 1, "index");
}

}  // namespace
