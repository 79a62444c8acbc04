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

#include "regchain/history.hpp"

namespace regchain {

void ExecutionHistory::record(const TestId& test, ExecutionRecord rec) {
  auto& log = records_[test];
  if (!log.empty() && rec.build < log.back().build) {
    throw Error(ErrorCode::kOrdering,
                "execution of '" + test + "' at build " +
                    std::to_string(rec.build) + " precedes build " +
                    std::to_string(log.back().build));
  }
  log.push_back(rec);
}

const std::vector<ExecutionRecord>& ExecutionHistory::of(const TestId& test) const {
  static const std::vector<ExecutionRecord> kEmpty;
  auto it = records_.find(test);
  return it == records_.end() ? kEmpty : it->second;
}

std::optional<BuildIndex> ExecutionHistory::last_execution(const TestId& test) const {
  const auto& log = of(test);
  if (log.empty()) return std::nullopt;
  return log.back().build;
}

}  // namespace regchain
