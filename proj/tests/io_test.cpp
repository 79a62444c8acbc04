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

#include <filesystem>

#include "regchain/io.hpp"
#include "support.hpp"

namespace {

using namespace regchain;

const char* kMinimal = R"({
  "schema": 1,
  "builds": [
    {"index": 1, "program_id": 7, "ready_at": 0,
     "stories": [{"id": "s1", "bv": 3, "sp": 2}],
     "tests": [{"id": "t1", "inp": "x", "expected": "y", "exectime": 1.5, "setup": 0.5}]}
  ],
  "behavior": [{"program_id": 7, "test_id": "t1", "outcome": "y"}],
  "dep_edges": [],
  "coverage": [{"story_id": "s1", "test_ids": ["t1"]}],
  "faults": []
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

std::string message_of(const std::string& text, ErrorCode expected) {
  try {
    parse_history(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

TEST(History, MinimalFile) {
  const auto h = parse_history(kMinimal);
  ASSERT_EQ(h.scenario.chain.size(), 1u);
  const Build& b = h.scenario.chain.builds()[0];
  EXPECT_EQ(b.program().id(), 7);
  EXPECT_EQ(b.tests()[0].duration(), Duration::units(2));
  EXPECT_EQ(b.program().run("t1"), "y");
  EXPECT_EQ(h.scenario.coverage.at("s1"), (std::set<TestId>{"t1"}));
}

TEST(History, ReferentialIntegrity) {
  const std::string text = kMinimal;
  message_of(with(text, R"("story_id": "s1")", R"("story_id": "s9")"),
             ErrorCode::kReferentialIntegrity);
  message_of(with(text, R"("test_ids": ["t1"])", R"("test_ids": ["t9"])"),
             ErrorCode::kReferentialIntegrity);
  message_of(with(text, R"("faults": [])",
                  R"("faults": [{"fault_id": "f", "detecting_test_ids": ["t9"]}])"),
             ErrorCode::kReferentialIntegrity);
  message_of(with(text, R"("program_id": 7, "test_id")", R"("program_id": 8, "test_id")"),
             ErrorCode::kReferentialIntegrity);
  message_of(with(text, R"("dep_edges": [])",
                  R"("dep_edges": [{"from": "t9", "to": "C", "kind": "test"}])"),
             ErrorCode::kReferentialIntegrity);
}

TEST(History, SchemaErrorsNameTheField) {
  const std::string text = kMinimal;
  EXPECT_NE(message_of(with(text, R"("exectime": 1.5)", R"("exectime": "slow")"),
                       ErrorCode::kParse)
                .find("builds[0].tests[0].exectime"),
            std::string::npos);
  EXPECT_NE(message_of(with(text, R"("schema": 1,)", ""), ErrorCode::kParse).find("schema"),
            std::string::npos);
  EXPECT_NE(message_of(with(text, R"("schema": 1)", R"("schema": 2)"), ErrorCode::kParse)
                .find("unsupported"),
            std::string::npos);
  EXPECT_NE(message_of(with(text, R"("dep_edges": [])",
                            R"("dep_edges": [{"from": "A", "to": "B", "kind": "x"}])"),
                       ErrorCode::kParse)
                .find("dep_edges[0].kind"),
            std::string::npos);
}

TEST(History, SyntaxErrorsCarryLineAndColumn) {
  const auto msg = message_of("{\n  \"schema\": 1,\n  oops\n}", ErrorCode::kParse);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(History, ModelErrorsPropagate) {
  const std::string text = kMinimal;
  message_of(with(text, R"("index": 1)", R"("index": 0)"), ErrorCode::kMalformedBuild);
}

TEST(History, FaultWithoutBuildIsAlwaysLive) {
  const auto text = with(kMinimal, R"("faults": [])",
                         R"("faults": [{"fault_id": "f", "detecting_test_ids": ["t1"]}])");
  const auto h = parse_history(text);
  ASSERT_EQ(h.scenario.faults.size(), 1u);
  EXPECT_EQ(h.scenario.faults[0].build, 0);
  const Build& b = h.scenario.chain.builds()[0];
  EXPECT_EQ(h.scenario.context_for(b, b).faults.count("f"), 1u);
  EXPECT_EQ(serialize_history(h.scenario).find("\"build\""), std::string::npos);
}

TEST(HistoryProperty, SerializeThenIngestIsIdentity) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    cfg.n_builds = 8;
    const auto gen = generate_chain(cfg);
    ExecutionHistory execs;
    execs.record("t001", {2, true, Duration::from_units(1.25)});
    execs.record("t001", {3, false, Duration::units(1)});
    const auto text = serialize_history(gen.scenario, execs);
    const auto back = parse_history(text);
    ASSERT_EQ(back.scenario, gen.scenario) << "seed " << seed;
    ASSERT_EQ(back.executions, execs);
    ASSERT_EQ(serialize_history(back.scenario, back.executions), text);
  }
}

TEST(Trace, JsonRoundTrip) {
  BuildTrace t;
  t.strategy = "retecs";
  t.tuples.push_back({1, 4, {"s1"}, {"a", "b"}, Budget::unbounded(), std::nullopt, {}});
  t.tuples.push_back({2, 5, {"s1", "s2"}, {"a"}, Budget::of(Duration::from_units(2.5)), 0.75,
                      {"a"}});
  const auto text = trace_to_json(t);
  EXPECT_NE(text.find("\"inf\""), std::string::npos);
  EXPECT_EQ(trace_from_json(text), t);
  EXPECT_ERROR_CODE(trace_from_json(R"({"schema": 1, "strategy": "x", "tuples": [{}]})"),
                    ErrorCode::kParse);
}

RunReport sample_report() {
  ScenarioConfig cfg;
  cfg.seed = 5;
  cfg.strategy = "retecs";
  cfg.window = WindowPolicy::parse("list:inf,20,20,20,inf,20,20,0,20");
  return run_scenario(cfg);
}

TEST(Report, JsonRoundTripAndDeterminism) {
  const auto r = sample_report();
  const auto text = report_to_json(r);
  EXPECT_EQ(report_from_json(text), r);
  EXPECT_EQ(report_to_json(sample_report()), text);
}

TEST(Report, CsvLayout) {
  const RunReport empty;
  EXPECT_EQ(report_to_csv(empty),
            "build,transition,candidates,executed,cost,budget,q_value,apfd,faults_active,"
            "faults_detected,failures,regall,regall_equivalent,schedule\n");
  const auto r = sample_report();
  const auto csv = report_to_csv(r);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.rows.size() + 1);
  EXPECT_NE(csv.find(",inf,"), std::string::npos);
}

TEST(Report, ExportWritesIdenticalBytes) {
  const auto dir = std::filesystem::temp_directory_path() / "regchain-io-test";
  std::filesystem::create_directories(dir);
  const auto r = sample_report();
  export_report(r, ReportFormat::kCsv, dir / "a.csv");
  export_report(r, ReportFormat::kCsv, dir / "b.csv");
  EXPECT_EQ(read_file(dir / "a.csv"), read_file(dir / "b.csv"));
  EXPECT_ERROR_CODE(export_report(r, ReportFormat::kJson, dir / "missing" / "x.json"),
                    ErrorCode::kIo);
  EXPECT_ERROR_CODE(read_file(dir / "missing.json"), ErrorCode::kIo);
  EXPECT_ERROR_CODE(parse_report_format("xml"), ErrorCode::kConfiguration);
  std::filesystem::remove_all(dir);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  ScenarioConfig cfg;
  cfg.seed = 1234567890123ULL;
  cfg.strategy = "depgraph";
  cfg.window = WindowPolicy::parse("list:1,inf");
  cfg.n_builds = 3;
  cfg.agent.decay = 0.8;
  cfg.engine = Engine::kExact;
  cfg.mix = {{TransitionKind::kDefectFix, 0.5}, {TransitionKind::kTechDebt, 0.5}};
  EXPECT_EQ(config_from_json(config_to_json(cfg)), cfg);
  EXPECT_EQ(config_from_json("{}"), ScenarioConfig{});
  EXPECT_ERROR_CODE(config_from_json(R"({"n_bilds": 3})"), ErrorCode::kConfiguration);
  EXPECT_ERROR_CODE(config_from_json(R"({"agent": {"gamma": 1}})"), ErrorCode::kConfiguration);
  EXPECT_ERROR_CODE(config_from_json(R"({"n_builds": "three"})"), ErrorCode::kParse);
}

}  // namespace
