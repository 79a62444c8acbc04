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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "regchain/duration.hpp"
#include "regchain/error.hpp"

namespace regchain {

using TestId = std::string;
using StoryId = std::string;
using Outcome = std::string;
using ProgramId = std::int64_t;
using BuildIndex = int;

/// One regression test: identifier, opaque input, expected output, and the
/// two time components whose sum is the test's cost.
struct TestCase {
  TestId id;
  std::string inp;
  std::string expected;
  Duration exectime;
  Duration setup;

  Duration duration() const { return exectime + setup; }

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

struct UserStory {
  StoryId id;
  double bv = 0.0;  // business value
  double sp = 0.0;  // story points

  friend bool operator==(const UserStory&, const UserStory&) = default;
};

/// Set of user stories, kept sorted by id. Duplicate ids are rejected.
class SpecSet {
 public:
  SpecSet() = default;
  explicit SpecSet(std::vector<UserStory> stories);

  const std::vector<UserStory>& stories() const { return stories_; }
  std::set<StoryId> ids() const;
  bool contains(const StoryId& id) const;
  std::size_t size() const { return stories_.size(); }

  friend bool operator==(const SpecSet&, const SpecSet&) = default;

 private:
  std::vector<UserStory> stories_;
};

/// Simulated program: executing test `t` yields behavior().at(t).
class ProgramVersion {
 public:
  ProgramVersion() = default;
  ProgramVersion(ProgramId id, std::map<TestId, Outcome> behavior)
      : id_(id), behavior_(std::move(behavior)) {}

  ProgramId id() const { return id_; }
  const std::map<TestId, Outcome>& behavior() const { return behavior_; }

  // Throws kUndefinedExecution when the test has no behavior entry.
  const Outcome& run(const TestId& test) const;

  friend bool operator==(const ProgramVersion&, const ProgramVersion&) = default;

 private:
  ProgramId id_ = 0;
  std::map<TestId, Outcome> behavior_;
};

/// A program version, its user stories and its test suite, plus the time the
/// build became ready.
///
/// Tests are stored sorted by id; duplicates and negative time components
/// raise kMalformedBuild at construction.
class Build {
 public:
  Build(BuildIndex index, ProgramVersion program, SpecSet specs,
        std::vector<TestCase> tests, Timestamp ready_at);

  BuildIndex index() const { return index_; }
  const ProgramVersion& program() const { return program_; }
  const SpecSet& specs() const { return specs_; }
  const std::vector<TestCase>& tests() const { return tests_; }
  Timestamp ready_at() const { return ready_at_; }

  const TestCase* find_test(const TestId& id) const;
  std::vector<TestId> test_ids() const;

  friend bool operator==(const Build&, const Build&) = default;

 private:
  BuildIndex index_;
  ProgramVersion program_;
  SpecSet specs_;
  std::vector<TestCase> tests_;
  Timestamp ready_at_;
};

/// Inclusive range of build indices forming one time-boxed iteration.
struct Iteration {
  BuildIndex first_build = 0;
  BuildIndex last_build = 0;

  friend bool operator==(const Iteration&, const Iteration&) = default;
};

struct Release {
  std::string id;
  // 1-based iteration numbers, contiguous and ascending.
  std::vector<int> source_iterations;
  BuildIndex build = 0;

  friend bool operator==(const Release&, const Release&) = default;
};

/// Linear sequence of builds, ordered strictly by index and ready time.
class BuildChain {
 public:
  BuildChain() = default;
  explicit BuildChain(std::vector<Build> builds,
                      std::vector<Iteration> iterations = {},
                      std::vector<Release> releases = {});

  const std::vector<Build>& builds() const { return builds_; }
  const std::vector<Iteration>& iterations() const { return iterations_; }
  const std::vector<Release>& releases() const { return releases_; }
  std::size_t size() const { return builds_.size(); }
  bool empty() const { return builds_.empty(); }

  // Throws kInvalidRange for an unknown index.
  const Build& build(BuildIndex index) const;

  BuildChain with_release(Release release) const;

  friend bool operator==(const BuildChain&, const BuildChain&) = default;

 private:
  std::vector<Build> builds_;
  std::vector<Iteration> iterations_;
  std::vector<Release> releases_;
};

/// Tests present in both builds, matched by id. The TestCase values come from the later build.
struct CandidateSet {
  std::vector<TestCase> tests;
  // False when the builds share no story; the candidate set is still returned.
  bool specs_overlap = false;

  std::vector<TestId> ids() const;
};

CandidateSet candidate_set(const Build& prev, const Build& next);

enum class Region {
  kRegion1 = 1,  // implemented, specified and tested
  kRegion2,      // implemented and specified, not tested
  kRegion3,      // implemented and tested, no specification
  kRegion4,      // specified and tested, not implemented
  kRegion5,      // specified only
  kRegion6,      // implemented only
  kRegion7,      // tests only
  kRegion8,      // outside every set
};

Region classify_region(bool in_p, bool in_s, bool in_t, bool outside_all);

enum class TransitionKind {
  kPeriodicBuild,
  kNewFeature,
  kDefectFix,
  kTechDebt,
  kFeatureWithoutTest,
};

std::string_view to_string(TransitionKind kind);
std::optional<TransitionKind> parse_transition_kind(std::string_view name);

/// Which build components changed between two consecutive builds.
struct TransitionDelta {
  bool program = false;
  bool specs = false;
  bool tests = false;

  friend bool operator==(const TransitionDelta&, const TransitionDelta&) = default;
};

// Program change is detected by ProgramVersion id; spec and test changes by
// id-set difference.
TransitionDelta transition_delta(const Build& prev, const Build& next);

class UnclassifiableTransition : public Error {
 public:
  explicit UnclassifiableTransition(TransitionDelta delta);
  TransitionDelta delta() const { return delta_; }

 private:
  TransitionDelta delta_;
};

// Rules are tried in a fixed order, so a program-only change is always a
// defect fix and technical debt requires a test delta.
TransitionKind classify_transition(const Build& prev, const Build& next);

// Designates the last build of the last iteration in the range.
Release make_release(const BuildChain& chain, std::span<const int> iterations);

}  // namespace regchain
