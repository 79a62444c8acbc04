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

#include "regchain/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

namespace regchain {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParse, (path.empty() ? std::string("document") : path) + ": " + what);
}

[[noreturn]] void dangling(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kReferentialIntegrity, path + ": " + what);
}

std::string at(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ": malformed JSON");
  }
}

const Json& require(const Json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) schema_error(at(path, key), "missing field");
  return *it;
}

const Json* optional_field(const Json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(std::string(key));
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    schema_error(path, "integer out of range");
  }
  return j.get<std::int64_t>();
}

std::uint64_t as_uint(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    schema_error(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

int as_index(const Json& j, const std::string& path) {
  const auto v = as_int(j, path);
  if (v < INT32_MIN || v > INT32_MAX) schema_error(path, "integer out of range");
  return static_cast<int>(v);
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) schema_error(path, "expected a boolean");
  return j.get<bool>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

Duration as_duration(const Json& j, const std::string& path) {
  const double units = as_number(j, path);
  if (units < 0) schema_error(path, "must be non-negative");
  return Duration::from_units(units);
}

std::vector<std::string> as_strings(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& item : as_array(j, path)) out.push_back(as_string(item, at(path, i++)));
  return out;
}

void check_schema(const Json& doc) {
  const auto& v = require(doc, "schema", "");
  if (as_int(v, "schema") != kSchemaVersion) {
    schema_error("schema", "unsupported version " + v.dump());
  }
}

Json units(Duration d) { return d.to_units(); }

Json budget_json(const Budget& b) {
  return b.is_unbounded() ? Json("inf") : units(b.limit());
}

Budget as_budget(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") schema_error(path, "expected a number or \"inf\"");
    return Budget::unbounded();
  }
  return Budget::of(as_duration(j, path));
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> as_optional_number(const Json& obj, std::string_view key,
                                         const std::string& path) {
  const Json* j = optional_field(obj, key, path);
  if (!j) return std::nullopt;
  return as_number(*j, at(path, key));
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for '" + path.string() + "'");
  return content;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------- history

std::string serialize_history(const Scenario& scenario, const ExecutionHistory& executions) {
  Json doc;
  doc["schema"] = kSchemaVersion;

  Json builds = Json::array();
  Json behavior = Json::array();
  std::set<ProgramId> written;
  for (const auto& b : scenario.chain.builds()) {
    Json jb;
    jb["index"] = b.index();
    jb["program_id"] = b.program().id();
    jb["ready_at"] = units(b.ready_at());
    Json stories = Json::array();
    for (const auto& s : b.specs().stories()) {
      stories.push_back({{"id", s.id}, {"bv", s.bv}, {"sp", s.sp}});
    }
    jb["stories"] = std::move(stories);
    Json tests = Json::array();
    for (const auto& t : b.tests()) {
      tests.push_back({{"id", t.id},
                       {"inp", t.inp},
                       {"expected", t.expected},
                       {"exectime", units(t.exectime)},
                       {"setup", units(t.setup)}});
    }
    jb["tests"] = std::move(tests);
    if (auto it = scenario.changed_classes.find(b.index()); it != scenario.changed_classes.end()) {
      jb["changed_classes"] = Json(std::vector<std::string>(it->second.begin(), it->second.end()));
    }
    builds.push_back(std::move(jb));

    if (written.insert(b.program().id()).second) {
      for (const auto& [test, outcome] : b.program().behavior()) {
        behavior.push_back(
            {{"program_id", b.program().id()}, {"test_id", test}, {"outcome", outcome}});
      }
    }
  }
  doc["builds"] = std::move(builds);
  doc["behavior"] = std::move(behavior);

  Json edges = Json::array();
  for (const auto& e : scenario.class_deps) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", "class"}});
  }
  for (const auto& e : scenario.test_links) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", "test"}});
  }
  doc["dep_edges"] = std::move(edges);

  Json coverage = Json::array();
  for (const auto& [story, tests] : scenario.coverage) {
    coverage.push_back(
        {{"story_id", story}, {"test_ids", std::vector<std::string>(tests.begin(), tests.end())}});
  }
  doc["coverage"] = std::move(coverage);

  Json faults = Json::array();
  for (const auto& f : scenario.faults) {
    Json fault = {{"fault_id", f.id},
                  {"detecting_test_ids",
                   std::vector<std::string>(f.detecting.begin(), f.detecting.end())}};
    if (f.build != 0) fault["build"] = f.build;
    faults.push_back(std::move(fault));
  }
  doc["faults"] = std::move(faults);

  Json iterations = Json::array();
  for (const auto& it : scenario.chain.iterations()) {
    iterations.push_back({{"first_build", it.first_build}, {"last_build", it.last_build}});
  }
  doc["iterations"] = std::move(iterations);

  Json releases = Json::array();
  for (const auto& r : scenario.chain.releases()) {
    releases.push_back(
        {{"id", r.id}, {"source_iterations", r.source_iterations}, {"build", r.build}});
  }
  doc["releases"] = std::move(releases);

  Json execs = Json::array();
  for (const auto& [test, records] : executions.all()) {
    for (const auto& r : records) {
      execs.push_back({{"test_id", test},
                       {"build", r.build},
                       {"verdict", r.failed ? "fail" : "pass"},
                       {"duration", units(r.duration)}});
    }
  }
  doc["executions"] = std::move(execs);
  return doc.dump(2) + "\n";
}

IngestedHistory parse_history(std::string_view text) {
  const Json doc = parse_document(text);
  if (!doc.is_object()) schema_error("", "expected an object");
  check_schema(doc);

  // program id -> behavior map
  std::map<ProgramId, std::map<TestId, Outcome>> behavior;
  {
    const std::string path = "behavior";
    std::size_t i = 0;
    for (const auto& e : as_array(require(doc, "behavior", ""), path)) {
      const auto p = at(path, i++);
      const ProgramId pid = as_int(require(e, "program_id", p), at(p, "program_id"));
      const TestId test = as_string(require(e, "test_id", p), at(p, "test_id"));
      const Outcome out = as_string(require(e, "outcome", p), at(p, "outcome"));
      if (!behavior[pid].emplace(test, out).second) {
        schema_error(p, "duplicate behavior for program " + std::to_string(pid) + ", test '" +
                            test + "'");
      }
    }
  }

  Scenario scenario;
  std::vector<Build> builds;
  std::set<BuildIndex> indices;
  std::set<StoryId> stories_seen;
  std::set<TestId> tests_seen;
  std::set<ProgramId> programs_seen;
  {
    const std::string path = "builds";
    std::size_t i = 0;
    for (const auto& jb : as_array(require(doc, "builds", ""), path)) {
      const auto p = at(path, i++);
      const BuildIndex index = as_index(require(jb, "index", p), at(p, "index"));
      const ProgramId pid = as_int(require(jb, "program_id", p), at(p, "program_id"));
      const Timestamp ready = as_duration(require(jb, "ready_at", p), at(p, "ready_at"));

      std::vector<UserStory> stories;
      {
        const auto sp = at(p, "stories");
        std::size_t k = 0;
        for (const auto& js : as_array(require(jb, "stories", p), sp)) {
          const auto q = at(sp, k++);
          UserStory s;
          s.id = as_string(require(js, "id", q), at(q, "id"));
          s.bv = as_number(require(js, "bv", q), at(q, "bv"));
          s.sp = as_number(require(js, "sp", q), at(q, "sp"));
          stories_seen.insert(s.id);
          stories.push_back(std::move(s));
        }
      }
      std::vector<TestCase> tests;
      {
        const auto tp = at(p, "tests");
        std::size_t k = 0;
        for (const auto& jt : as_array(require(jb, "tests", p), tp)) {
          const auto q = at(tp, k++);
          TestCase t;
          t.id = as_string(require(jt, "id", q), at(q, "id"));
          t.inp = as_string(require(jt, "inp", q), at(q, "inp"));
          t.expected = as_string(require(jt, "expected", q), at(q, "expected"));
          t.exectime = as_duration(require(jt, "exectime", q), at(q, "exectime"));
          t.setup = as_duration(require(jt, "setup", q), at(q, "setup"));
          tests_seen.insert(t.id);
          tests.push_back(std::move(t));
        }
      }
      if (const Json* cc = optional_field(jb, "changed_classes", p)) {
        const auto names = as_strings(*cc, at(p, "changed_classes"));
        scenario.changed_classes[index] = std::set<ClassId>(names.begin(), names.end());
      }
      auto it = behavior.find(pid);
      ProgramVersion program(pid, it == behavior.end() ? std::map<TestId, Outcome>{} : it->second);
      programs_seen.insert(pid);
      indices.insert(index);
      builds.emplace_back(index, std::move(program), SpecSet(std::move(stories)),
                          std::move(tests), ready);
    }
  }
  for (const auto& [pid, outcomes] : behavior) {
    if (!programs_seen.contains(pid)) {
      dangling("behavior", "program " + std::to_string(pid) + " is not used by any build");
    }
    for (const auto& [test, _] : outcomes) {
      if (!tests_seen.contains(test)) dangling("behavior", "unknown test '" + test + "'");
    }
  }

  std::vector<Iteration> iterations;
  if (const Json* its = optional_field(doc, "iterations", "")) {
    std::size_t i = 0;
    for (const auto& j : as_array(*its, "iterations")) {
      const auto p = at(std::string("iterations"), i++);
      iterations.push_back({as_index(require(j, "first_build", p), at(p, "first_build")),
                            as_index(require(j, "last_build", p), at(p, "last_build"))});
    }
  }
  std::vector<Release> releases;
  if (const Json* rs = optional_field(doc, "releases", "")) {
    std::size_t i = 0;
    for (const auto& j : as_array(*rs, "releases")) {
      const auto p = at(std::string("releases"), i++);
      Release r;
      r.id = as_string(require(j, "id", p), at(p, "id"));
      const auto sp = at(p, "source_iterations");
      std::size_t k = 0;
      for (const auto& n : as_array(require(j, "source_iterations", p), sp)) {
        r.source_iterations.push_back(as_index(n, at(sp, k++)));
      }
      r.build = as_index(require(j, "build", p), at(p, "build"));
      releases.push_back(std::move(r));
    }
  }
  scenario.chain = BuildChain(std::move(builds), std::move(iterations), std::move(releases));

  {
    const std::string path = "dep_edges";
    std::size_t i = 0;
    for (const auto& e : as_array(require(doc, "dep_edges", ""), path)) {
      const auto p = at(path, i++);
      DepEdge edge{as_string(require(e, "from", p), at(p, "from")),
                   as_string(require(e, "to", p), at(p, "to"))};
      const auto kind = as_string(require(e, "kind", p), at(p, "kind"));
      if (kind == "class") {
        scenario.class_deps.push_back(std::move(edge));
      } else if (kind == "test") {
        if (!tests_seen.contains(edge.from)) dangling(p, "unknown test '" + edge.from + "'");
        scenario.test_links.push_back(std::move(edge));
      } else {
        schema_error(at(p, "kind"), "expected \"class\" or \"test\"");
      }
    }
  }
  {
    const std::string path = "coverage";
    std::size_t i = 0;
    for (const auto& c : as_array(require(doc, "coverage", ""), path)) {
      const auto p = at(path, i++);
      const StoryId story = as_string(require(c, "story_id", p), at(p, "story_id"));
      if (!stories_seen.contains(story)) dangling(p, "unknown story '" + story + "'");
      if (scenario.coverage.contains(story)) schema_error(p, "duplicate story '" + story + "'");
      auto& tests = scenario.coverage[story];
      for (const auto& t : as_strings(require(c, "test_ids", p), at(p, "test_ids"))) {
        if (!tests_seen.contains(t)) dangling(p, "unknown test '" + t + "'");
        tests.insert(t);
      }
    }
  }
  {
    const std::string path = "faults";
    std::size_t i = 0;
    for (const auto& f : as_array(require(doc, "faults", ""), path)) {
      const auto p = at(path, i++);
      Fault fault;
      fault.id = as_string(require(f, "fault_id", p), at(p, "fault_id"));
      for (const auto& t :
           as_strings(require(f, "detecting_test_ids", p), at(p, "detecting_test_ids"))) {
        if (!tests_seen.contains(t)) dangling(p, "unknown test '" + t + "'");
        fault.detecting.insert(t);
      }
      if (const Json* b = optional_field(f, "build", p)) {
        fault.build = as_index(*b, at(p, "build"));
        if (!indices.contains(fault.build)) {
          dangling(p, "unknown build " + std::to_string(fault.build));
        }
      }
      scenario.faults.push_back(std::move(fault));
    }
  }

  IngestedHistory out;
  if (const Json* ex = optional_field(doc, "executions", "")) {
    std::size_t i = 0;
    for (const auto& e : as_array(*ex, "executions")) {
      const auto p = at(std::string("executions"), i++);
      const TestId test = as_string(require(e, "test_id", p), at(p, "test_id"));
      if (!tests_seen.contains(test)) dangling(p, "unknown test '" + test + "'");
      ExecutionRecord rec;
      rec.build = as_index(require(e, "build", p), at(p, "build"));
      if (!indices.contains(rec.build)) dangling(p, "unknown build " + std::to_string(rec.build));
      const auto verdict = as_string(require(e, "verdict", p), at(p, "verdict"));
      if (verdict != "pass" && verdict != "fail") {
        schema_error(at(p, "verdict"), "expected \"pass\" or \"fail\"");
      }
      rec.failed = verdict == "fail";
      rec.duration = as_duration(require(e, "duration", p), at(p, "duration"));
      out.executions.record(test, rec);
    }
  }
  out.scenario = std::move(scenario);
  return out;
}

IngestedHistory ingest_history(const std::filesystem::path& path) {
  return parse_history(read_file(path));
}

// ------------------------------------------------------------------ trace

namespace {

Json trace_json(const BuildTrace& trace) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["strategy"] = trace.strategy;
  Json tuples = Json::array();
  for (const auto& t : trace.tuples) {
    tuples.push_back({{"index", t.index},
                      {"program_id", t.program_id},
                      {"spec_ids", t.spec_ids},
                      {"test_ids", t.test_ids},
                      {"budget", budget_json(t.budget)},
                      {"q_value", optional_number(t.q_value)},
                      {"schedule", t.schedule}});
  }
  doc["tuples"] = std::move(tuples);
  return doc;
}

BuildTrace trace_of(const Json& doc, const std::string& root) {
  BuildTrace trace;
  trace.strategy = as_string(require(doc, "strategy", root), at(root, "strategy"));
  const auto path = at(root, "tuples");
  std::size_t i = 0;
  for (const auto& j : as_array(require(doc, "tuples", root), path)) {
    const auto p = at(path, i++);
    TraceTuple t;
    t.index = as_index(require(j, "index", p), at(p, "index"));
    t.program_id = as_int(require(j, "program_id", p), at(p, "program_id"));
    t.spec_ids = as_strings(require(j, "spec_ids", p), at(p, "spec_ids"));
    t.test_ids = as_strings(require(j, "test_ids", p), at(p, "test_ids"));
    t.budget = as_budget(require(j, "budget", p), at(p, "budget"));
    t.q_value = as_optional_number(j, "q_value", p);
    t.schedule = as_strings(require(j, "schedule", p), at(p, "schedule"));
    trace.tuples.push_back(std::move(t));
  }
  return trace;
}

}  // namespace

std::string trace_to_json(const BuildTrace& trace) { return trace_json(trace).dump(2) + "\n"; }

BuildTrace trace_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  check_schema(doc);
  return trace_of(doc, "");
}

// ----------------------------------------------------------------- report

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw Error(ErrorCode::kConfiguration, "unknown format '" + std::string(text) + "'");
}

std::string report_to_json(const RunReport& report) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["seed"] = report.seed;
  doc["strategy"] = report.strategy;
  doc["metric"] = report.metric;
  doc["mean_apfd"] = optional_number(report.mean_apfd);
  doc["total_cost"] = units(report.total_cost);
  doc["recall"] = optional_number(report.recall);
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"build", r.build},
                    {"transition", std::string(to_string(r.kind))},
                    {"candidates", r.candidates},
                    {"schedule", r.schedule},
                    {"cost", units(r.cost)},
                    {"budget", budget_json(r.budget)},
                    {"q_value", optional_number(r.q_value)},
                    {"apfd", optional_number(r.apfd)},
                    {"faults_active", r.faults_active},
                    {"faults_detected", r.faults_detected},
                    {"failures", r.failures},
                    {"regall", r.regall ? Json(*r.regall) : Json(nullptr)},
                    {"regall_equivalent",
                     r.regall_equivalent ? Json(*r.regall_equivalent) : Json(nullptr)}});
  }
  doc["rows"] = std::move(rows);
  doc["trace"] = trace_json(report.trace);
  return doc.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  check_schema(doc);
  RunReport report;
  report.seed = as_uint(require(doc, "seed", ""), "seed");
  report.strategy = as_string(require(doc, "strategy", ""), "strategy");
  report.metric = as_string(require(doc, "metric", ""), "metric");
  report.mean_apfd = as_optional_number(doc, "mean_apfd", "");
  report.total_cost = as_duration(require(doc, "total_cost", ""), "total_cost");
  report.recall = as_optional_number(doc, "recall", "");
  std::size_t i = 0;
  for (const auto& j : as_array(require(doc, "rows", ""), "rows")) {
    const auto p = at(std::string("rows"), i++);
    ReportRow r;
    r.build = as_index(require(j, "build", p), at(p, "build"));
    const auto kind = as_string(require(j, "transition", p), at(p, "transition"));
    const auto parsed = parse_transition_kind(kind);
    if (!parsed) schema_error(at(p, "transition"), "unknown transition '" + kind + "'");
    r.kind = *parsed;
    r.candidates = as_uint(require(j, "candidates", p), at(p, "candidates"));
    r.schedule = as_strings(require(j, "schedule", p), at(p, "schedule"));
    r.cost = as_duration(require(j, "cost", p), at(p, "cost"));
    r.budget = as_budget(require(j, "budget", p), at(p, "budget"));
    r.q_value = as_optional_number(j, "q_value", p);
    r.apfd = as_optional_number(j, "apfd", p);
    r.faults_active = as_uint(require(j, "faults_active", p), at(p, "faults_active"));
    r.faults_detected = as_uint(require(j, "faults_detected", p), at(p, "faults_detected"));
    r.failures = as_uint(require(j, "failures", p), at(p, "failures"));
    if (const Json* v = optional_field(j, "regall", p)) r.regall = as_index(*v, at(p, "regall"));
    if (const Json* v = optional_field(j, "regall_equivalent", p)) {
      r.regall_equivalent = as_bool(*v, at(p, "regall_equivalent"));
    }
    report.rows.push_back(std::move(r));
  }
  report.trace = trace_of(require(doc, "trace", ""), "trace");
  return report;
}

namespace {

std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string cell(const std::optional<double>& v) { return v ? shortest(*v) : std::string(); }

}  // namespace

std::string report_to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "build,transition,candidates,executed,cost,budget,q_value,apfd,faults_active,"
         "faults_detected,failures,regall,regall_equivalent,schedule\n";
  for (const auto& r : report.rows) {
    std::string schedule;
    for (std::size_t i = 0; i < r.schedule.size(); ++i) {
      if (i) schedule += ';';
      schedule += r.schedule[i];
    }
    out << r.build << ',' << to_string(r.kind) << ',' << r.candidates << ','
        << r.schedule.size() << ',' << format_units(r.cost) << ','
        << (r.budget.is_unbounded() ? std::string("inf") : format_units(r.budget.limit()))
        << ',' << cell(r.q_value) << ',' << cell(r.apfd) << ',' << r.faults_active << ','
        << r.faults_detected << ',' << r.failures << ','
        << (r.regall ? std::to_string(*r.regall) : std::string()) << ','
        << (r.regall_equivalent ? (*r.regall_equivalent ? "true" : "false") : "") << ','
        << schedule << '\n';
  }
  return out.str();
}

std::string render_report(const RunReport& report, ReportFormat format) {
  return format == ReportFormat::kJson ? report_to_json(report) : report_to_csv(report);
}

void export_report(const RunReport& report, ReportFormat format,
                   const std::filesystem::path& path) {
  write_file(path, render_report(report, format));
}

// ----------------------------------------------------------------- config

std::string config_to_json(const ScenarioConfig& cfg) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["seed"] = cfg.seed;
  doc["n_builds"] = cfg.n_builds;
  doc["n_tests"] = cfg.n_tests;
  doc["n_stories"] = cfg.n_stories;
  doc["n_classes"] = cfg.n_classes;
  doc["builds_per_iteration"] = cfg.builds_per_iteration;
  Json mix = Json::object();
  for (const auto& [kind, p] : cfg.mix) mix[std::string(to_string(kind))] = p;
  doc["mix"] = std::move(mix);
  doc["window"] = cfg.window.to_string();
  doc["fault_rate"] = cfg.fault_rate;
  doc["fault_prone_fraction"] = cfg.fault_prone_fraction;
  doc["strategy"] = cfg.strategy;
  doc["random_k"] = cfg.random_k;
  doc["agent"] = {{"decay", cfg.agent.decay},
                  {"reward", cfg.agent.reward},
                  {"buffer_capacity", cfg.agent.buffer_capacity},
                  {"initial_weight", cfg.agent.initial_weight}};
  doc["engine"] = std::string(to_string(cfg.engine));
  doc["metric"] = cfg.metric;
  return doc.dump(2) + "\n";
}

ScenarioConfig config_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  if (!doc.is_object()) schema_error("", "expected an object");
  ScenarioConfig cfg;
  const auto count = [](const Json& j, const std::string& path) {
    const auto v = as_int(j, path);
    if (v < INT32_MIN || v > INT32_MAX) schema_error(path, "integer out of range");
    return static_cast<int>(v);
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema") {
      check_schema(doc);
    } else if (key == "seed") {
      cfg.seed = as_uint(value, key);
    } else if (key == "n_builds") {
      cfg.n_builds = count(value, key);
    } else if (key == "n_tests") {
      cfg.n_tests = count(value, key);
    } else if (key == "n_stories") {
      cfg.n_stories = count(value, key);
    } else if (key == "n_classes") {
      cfg.n_classes = count(value, key);
    } else if (key == "builds_per_iteration") {
      cfg.builds_per_iteration = count(value, key);
    } else if (key == "mix") {
      if (!value.is_object()) schema_error(key, "expected an object");
      cfg.mix.clear();
      for (const auto& [name, p] : value.items()) {
        const auto kind = parse_transition_kind(name);
        if (!kind) throw Error(ErrorCode::kConfiguration, "mix: unknown transition '" + name + "'");
        cfg.mix[*kind] = as_number(p, at(key, name));
      }
    } else if (key == "window") {
      cfg.window = WindowPolicy::parse(as_string(value, key));
    } else if (key == "fault_rate") {
      cfg.fault_rate = as_number(value, key);
    } else if (key == "fault_prone_fraction") {
      cfg.fault_prone_fraction = as_number(value, key);
    } else if (key == "strategy") {
      cfg.strategy = as_string(value, key);
    } else if (key == "random_k") {
      cfg.random_k = as_uint(value, key);
    } else if (key == "agent") {
      if (!value.is_object()) schema_error(key, "expected an object");
      for (const auto& [name, v] : value.items()) {
        const auto p = at(key, name);
        if (name == "decay") {
          cfg.agent.decay = as_number(v, p);
        } else if (name == "reward") {
          cfg.agent.reward = as_number(v, p);
        } else if (name == "buffer_capacity") {
          cfg.agent.buffer_capacity = as_uint(v, p);
        } else if (name == "initial_weight") {
          cfg.agent.initial_weight = as_number(v, p);
        } else {
          throw Error(ErrorCode::kConfiguration, p + ": unknown field");
        }
      }
    } else if (key == "engine") {
      cfg.engine = parse_engine(as_string(value, key));
    } else if (key == "metric") {
      cfg.metric = as_string(value, key);
    } else {
      throw Error(ErrorCode::kConfiguration, key + ": unknown field");
    }
  }
  return cfg;
}

}  // namespace regchain
