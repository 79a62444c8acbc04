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

#include <map>
#include <optional>
#include <vector>

#include "regchain/duration.hpp"
#include "regchain/model.hpp"

namespace regchain {

struct ExecutionRecord {
  BuildIndex build = 0;
  bool failed = false;
  Duration duration;

  friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

/// Per-test verdict log: build index, pass/fail and observed duration of
/// every execution, oldest first.
class ExecutionHistory {
 public:
  // Throws kOrdering if `rec.build` precedes the test's last recorded build.
  void record(const TestId& test, ExecutionRecord rec);

  // Empty span for a test never executed.
  const std::vector<ExecutionRecord>& of(const TestId& test) const;
  std::optional<BuildIndex> last_execution(const TestId& test) const;

  const std::map<TestId, std::vector<ExecutionRecord>>& all() const {
    return records_;
  }

  friend bool operator==(const ExecutionHistory&, const ExecutionHistory&) = default;

 private:
  std::map<TestId, std::vector<ExecutionRecord>> records_;
};

}  // namespace regchain
