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

#include <filesystem>
#include <string>
#include <string_view>

#include "regchain/arta.hpp"
#include "regchain/history.hpp"
#include "regchain/scenario.hpp"
#include "regchain/simulator.hpp"

namespace regchain {

/// Version written to and required from every JSON document.
inline constexpr int kSchemaVersion = 1;

/// A recorded CI log: the scenario plus any verdicts already observed.
struct IngestedHistory {
  Scenario scenario;
  ExecutionHistory executions;

  friend bool operator==(const IngestedHistory&, const IngestedHistory&) = default;
};

// Malformed JSON raises kParse with "line L, column C". Schema violations
// raise kParse naming the JSON path (e.g. "builds[2].tests[0].exectime").
// References to unknown builds, programs, stories or tests raise
// kReferentialIntegrity.
IngestedHistory parse_history(std::string_view text);
IngestedHistory ingest_history(const std::filesystem::path& path);
std::string serialize_history(const Scenario& scenario,
                              const ExecutionHistory& executions = {});

std::string trace_to_json(const BuildTrace& trace);
BuildTrace trace_from_json(std::string_view text);

enum class ReportFormat { kJson, kCsv };

// "json" or "csv"; anything else raises kConfiguration.
ReportFormat parse_report_format(std::string_view text);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);

// Columns, in order: build, transition, candidates, executed, cost, budget,
// q_value, apfd, faults_active, faults_detected, failures, regall,
// regall_equivalent, schedule. Undefined values are empty cells; the
// schedule is ';'-separated. An empty report yields the header alone.
std::string report_to_csv(const RunReport& report);

std::string render_report(const RunReport& report, ReportFormat format);
void export_report(const RunReport& report, ReportFormat format,
                   const std::filesystem::path& path);

std::string config_to_json(const ScenarioConfig& cfg);
// Missing keys keep their defaults; unknown keys raise kConfiguration.
ScenarioConfig config_from_json(std::string_view text);

// Whole-file helpers; failures raise kIo.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace regchain
