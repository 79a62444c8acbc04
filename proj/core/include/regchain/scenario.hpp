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
#include <set>
#include <vector>

#include "regchain/depgraph.hpp"
#include "regchain/model.hpp"
#include "regchain/techniques.hpp"

namespace regchain {

/// A fault introduced by the program of build `build`; its detecting tests
/// change outcome relative to the previous build. Build 0 means the fault is
/// live on every transition.
struct Fault {
  FaultId id;
  BuildIndex build = 0;
  std::set<TestId> detecting;

  friend bool operator==(const Fault&, const Fault&) = default;
};

/// A build chain together with the side data strategies and metrics consult:
/// static dependency edges, requirement coverage, injected faults, and the
/// classes touched by each build.
struct Scenario {
  BuildChain chain;
  std::vector<DepEdge> class_deps;
  std::vector<DepEdge> test_links;
  RequirementCoverage coverage;
  std::vector<Fault> faults;
  // build index -> classes modified relative to the previous build
  std::map<BuildIndex, std::set<ClassId>> changed_classes;

  // Classes named by any edge or change record.
  std::vector<ClassId> classes() const;
  // Tests of every build in the chain.
  std::vector<TestId> all_tests() const;
  DepGraph graph() const;

  // Faults introduced at `next`, with detecting tests cut to the candidate
  // set; faults left with no detecting candidate are dropped. Coverage is cut
  // to the shared stories and candidate tests.
  EvalContext context_for(const Build& prev, const Build& next) const;

  const std::set<ClassId>& changes_at(BuildIndex index) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

}  // namespace regchain
