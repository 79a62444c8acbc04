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

#include "regchain/io.hpp"
#include "regchain/simulator.hpp"
#include "support.hpp"

namespace {

using namespace regchain;

TEST(WindowPolicy, ParsesEveryForm) {
  EXPECT_EQ(WindowPolicy::parse("inf").kind, WindowPolicy::Kind::kUnbounded);
  EXPECT_EQ(WindowPolicy::parse("chain").kind, WindowPolicy::Kind::kChain);
  const auto nightly = WindowPolicy::parse("nightly");
  EXPECT_EQ(nightly.kind, WindowPolicy::Kind::kFixed);
  EXPECT_EQ(nightly.fixed, Duration::units(30));
  EXPECT_EQ(WindowPolicy::parse("fixed:2.5").fixed, Duration::from_units(2.5));
  EXPECT_EQ(WindowPolicy::parse("fraction:0.25").fraction, 0.25);
  const auto list = WindowPolicy::parse("list:1,inf,3");
  ASSERT_EQ(list.budgets.size(), 3u);
  EXPECT_TRUE(list.budgets[1].is_unbounded());
  for (const char* bad : {"weekly", "fixed:abc", "fraction:-1", "list:1,x"}) {
    EXPECT_ERROR_CODE(WindowPolicy::parse(bad), ErrorCode::kConfiguration);
  }
}

TEST(WindowPolicy, TextRoundTrips) {
  for (const char* text : {"inf", "chain", "fixed:7.5", "fraction:0.5", "list:1,inf,3"}) {
    const auto p = WindowPolicy::parse(text);
    EXPECT_EQ(WindowPolicy::parse(p.to_string()), p) << text;
  }
}

TEST(WindowsFor, FollowsThePolicy) {
  ScenarioConfig cfg;
  cfg.n_builds = 4;
  const auto gen = generate_chain(cfg);
  const auto& builds = gen.scenario.chain.builds();

  const auto chain = windows_for(WindowPolicy::parse("chain"), gen.scenario.chain);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[1].budget().limit(), builds[2].ready_at() - builds[1].ready_at());
  EXPECT_EQ(chain[1].start(), builds[1].ready_at());

  EXPECT_ERROR_CODE(windows_for(WindowPolicy::parse("list:1,2"), gen.scenario.chain),
                    ErrorCode::kConfiguration);
  Duration suite;
  for (const auto& t : builds[0].tests()) suite += t.duration();
  const auto half = windows_for(WindowPolicy::parse("fraction:0.5"), gen.scenario.chain);
  EXPECT_EQ(half[0].budget().limit(), Duration::micros(suite.micros() / 2));
}

TEST(ScenarioConfig, ValidationNamesTheField) {
  const auto expect_field = [](ScenarioConfig cfg, const std::string& field) {
    try {
      cfg.validate();
      FAIL() << "expected failure on " << field;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
      EXPECT_EQ(std::string(e.what()).rfind(field, 0), 0u) << e.what();
    }
  };
  ScenarioConfig c;
  c.n_builds = 0;
  expect_field(c, "n_builds");
  c = {};
  c.n_tests = -1;
  expect_field(c, "n_tests");
  c = {};
  c.mix[TransitionKind::kDefectFix] = 0.9;
  expect_field(c, "mix");
  c = {};
  c.strategy = "oracle";
  expect_field(c, "strategy");
  c = {};
  c.metric = "speed";
  expect_field(c, "metric");
  c = {};
  c.fault_rate = 2;
  expect_field(c, "fault_rate");
}

TEST(Generator, SingleBuildHasNoTransitions) {
  ScenarioConfig cfg;
  cfg.n_builds = 1;
  const auto gen = generate_chain(cfg);
  EXPECT_EQ(gen.scenario.chain.size(), 1u);
  EXPECT_TRUE(gen.kinds.empty());
  EXPECT_TRUE(run_scenario(cfg).rows.empty());
}

TEST(Generator, AllPeriodicMeansIdenticalBuilds) {
  ScenarioConfig cfg;
  cfg.mix = {{TransitionKind::kPeriodicBuild, 1.0}};
  const auto gen = generate_chain(cfg);
  const auto& builds = gen.scenario.chain.builds();
  for (std::size_t k = 1; k < builds.size(); ++k) {
    EXPECT_EQ(builds[k].program(), builds[0].program());
    EXPECT_EQ(builds[k].specs(), builds[0].specs());
    EXPECT_EQ(builds[k].tests(), builds[0].tests());
    EXPECT_GT(builds[k].ready_at(), builds[k - 1].ready_at());
  }
  EXPECT_TRUE(gen.scenario.faults.empty());
}

TEST(GeneratorProperty, TransitionsClassifyAsSampled) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    cfg.n_builds = 15;
    cfg.n_tests = static_cast<int>(1 + seed % 6);
    const auto gen = generate_chain(cfg);
    const auto& builds = gen.scenario.chain.builds();
    ASSERT_EQ(gen.kinds.size(), builds.size() - 1);
    for (std::size_t k = 1; k < builds.size(); ++k) {
      ASSERT_EQ(classify_transition(builds[k - 1], builds[k]), gen.kinds[k - 1])
          << "seed " << seed << " build " << builds[k].index();
    }
  }
}

TEST(GeneratorProperty, DefectFixesChangeSomeOutcome) {
  ScenarioConfig cfg;
  cfg.mix = {{TransitionKind::kDefectFix, 1.0}};
  cfg.fault_rate = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    cfg.seed = seed;
    const auto gen = generate_chain(cfg);
    const auto& builds = gen.scenario.chain.builds();
    for (std::size_t k = 1; k < builds.size(); ++k) {
      bool changed = false;
      for (const auto& [test, out] : builds[k].program().behavior()) {
        changed = changed || builds[k - 1].program().run(test) != out;
      }
      EXPECT_TRUE(changed);
    }
  }
}

TEST(GeneratorProperty, SameSeedSameBytes) {
  ScenarioConfig cfg;
  cfg.seed = 99;
  EXPECT_EQ(serialize_history(generate_chain(cfg).scenario),
            serialize_history(generate_chain(cfg).scenario));
  auto other = cfg;
  other.seed = 100;
  EXPECT_NE(serialize_history(generate_chain(cfg).scenario),
            serialize_history(generate_chain(other).scenario));
}

TEST(RunScenario, RetestAllUnboundedMatchesRegAll) {
  ScenarioConfig cfg;
  cfg.n_builds = 12;
  const auto report = run_scenario(cfg);
  ASSERT_EQ(report.rows.size(), 11u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.schedule.size(), row.candidates);
    ASSERT_TRUE(row.regall.has_value());
    EXPECT_EQ(row.regall_equivalent, true);
    EXPECT_EQ(*row.regall == 0, row.failures > 0);
  }
  EXPECT_EQ(report.trace.tuples.size(), 12u);
}

TEST(RunScenario, ZeroWindowStarvesEverySchedule) {
  ScenarioConfig cfg;
  cfg.window = WindowPolicy::parse("fixed:0");
  for (const char* strategy : {"retest-all", "random-k", "retecs", "depgraph"}) {
    cfg.strategy = strategy;
    const auto report = run_scenario(cfg);
    for (const auto& row : report.rows) {
      EXPECT_TRUE(row.schedule.empty());
      EXPECT_FALSE(row.q_value.has_value());
      EXPECT_FALSE(row.regall.has_value());
    }
    EXPECT_EQ(report.total_cost, Duration{});
  }
}

TEST(RunScenarioProperty, LargerWindowNeverRunsFewerTests) {
  // Stateless strategies only: a stateful agent may legitimately reorder
  // its later plans once it has seen different verdicts.
  for (const char* strategy : {"retest-all", "random-k"}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      ScenarioConfig cfg;
      cfg.seed = seed;
      cfg.strategy = strategy;
      cfg.window = WindowPolicy::parse("fixed:20");
      const auto small = run_scenario(cfg);
      cfg.window = WindowPolicy::parse("fixed:60");
      const auto large = run_scenario(cfg);
      for (std::size_t k = 0; k < small.rows.size(); ++k) {
        ASSERT_LE(small.rows[k].schedule.size(), large.rows[k].schedule.size());
      }
    }
  }
}

TEST(RunScenarios, ParallelEqualsSerial) {
  std::vector<ScenarioConfig> configs;
  for (const char* strategy : {"retest-all", "random-k", "retecs", "depgraph"}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ScenarioConfig cfg;
      cfg.seed = seed;
      cfg.strategy = strategy;
      cfg.window = WindowPolicy::parse("nightly");
      configs.push_back(cfg);
    }
  }
  const auto serial = run_scenarios(configs, 1);
  const auto parallel = run_scenarios(configs, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(report_to_json(serial[i]), report_to_json(parallel[i]));
  }

  auto broken = configs;
  broken[5].strategy = "oracle";
  EXPECT_ERROR_CODE(run_scenarios(broken, 3), ErrorCode::kConfiguration);
}

}  // namespace
