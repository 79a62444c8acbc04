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

#include "regchain/model.hpp"

#include <algorithm>

namespace regchain {

namespace {

template <typename T>
bool has_adjacent_duplicate_ids(const std::vector<T>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end(),
                            [](const T& a, const T& b) {
                              return a.id == b.id;
                            }) != sorted.end();
}

std::set<TestId> id_set(const std::vector<TestCase>& tests) {
  std::set<TestId> ids;
  for (const auto& t : tests) ids.insert(t.id);
  return ids;
}

}  // namespace

SpecSet::SpecSet(std::vector<UserStory> stories) : stories_(std::move(stories)) {
  std::sort(stories_.begin(), stories_.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  if (has_adjacent_duplicate_ids(stories_)) {
    throw Error(ErrorCode::kMalformedBuild, "duplicate user story id");
  }
}

std::set<StoryId> SpecSet::ids() const {
  std::set<StoryId> out;
  for (const auto& s : stories_) out.insert(s.id);
  return out;
}

bool SpecSet::contains(const StoryId& id) const {
  return std::ranges::binary_search(stories_, id, {}, &UserStory::id);
}

const Outcome& ProgramVersion::run(const TestId& test) const {
  auto it = behavior_.find(test);
  if (it == behavior_.end()) {
    throw Error(ErrorCode::kUndefinedExecution,
                "program " + std::to_string(id_) + " has no behavior for test '" +
                    test + "'");
  }
  return it->second;
}

Build::Build(BuildIndex index, ProgramVersion program, SpecSet specs,
             std::vector<TestCase> tests, Timestamp ready_at)
    : index_(index),
      program_(std::move(program)),
      specs_(std::move(specs)),
      tests_(std::move(tests)),
      ready_at_(ready_at) {
  if (index_ < 1) {
    throw Error(ErrorCode::kMalformedBuild, "build index must be positive");
  }
  std::sort(tests_.begin(), tests_.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  if (has_adjacent_duplicate_ids(tests_)) {
    throw Error(ErrorCode::kMalformedBuild,
                "duplicate test id in build " + std::to_string(index_));
  }
  for (const auto& t : tests_) {
    if (t.exectime < Duration{} || t.setup < Duration{}) {
      throw Error(ErrorCode::kMalformedBuild,
                  "negative time component on test '" + t.id + "'");
    }
  }
}

const TestCase* Build::find_test(const TestId& id) const {
  auto it = std::lower_bound(
      tests_.begin(), tests_.end(), id,
      [](const TestCase& t, const TestId& key) { return t.id < key; });
  return (it != tests_.end() && it->id == id) ? &*it : nullptr;
}

std::vector<TestId> Build::test_ids() const {
  std::vector<TestId> ids;
  ids.reserve(tests_.size());
  for (const auto& t : tests_) ids.push_back(t.id);
  return ids;
}

BuildChain::BuildChain(std::vector<Build> builds,
                       std::vector<Iteration> iterations,
                       std::vector<Release> releases)
    : builds_(std::move(builds)),
      iterations_(std::move(iterations)),
      releases_(std::move(releases)) {
  for (std::size_t i = 1; i < builds_.size(); ++i) {
    if (builds_[i].index() <= builds_[i - 1].index()) {
      throw Error(ErrorCode::kOrdering, "build indices must strictly increase");
    }
    if (builds_[i].ready_at() <= builds_[i - 1].ready_at()) {
      throw Error(ErrorCode::kOrdering,
                  "ready_at must strictly increase (build " +
                      std::to_string(builds_[i].index()) + ")");
    }
  }
  for (std::size_t i = 0; i < iterations_.size(); ++i) {
    const auto& it = iterations_[i];
    if (it.first_build > it.last_build) {
      throw Error(ErrorCode::kInvalidRange, "iteration with empty build range");
    }
    if (i > 0 && it.first_build <= iterations_[i - 1].last_build) {
      throw Error(ErrorCode::kOrdering, "iterations must be ordered and disjoint");
    }
    build(it.first_build);
    build(it.last_build);
  }
  for (const auto& r : releases_) {
    for (std::size_t k = 1; k < r.source_iterations.size(); ++k) {
      if (r.source_iterations[k] != r.source_iterations[k - 1] + 1) {
        throw Error(ErrorCode::kInvalidRange,
                    "release '" + r.id + "' spans non-contiguous iterations");
      }
    }
  }
}

const Build& BuildChain::build(BuildIndex index) const {
  auto it = std::lower_bound(
      builds_.begin(), builds_.end(), index,
      [](const Build& b, BuildIndex key) { return b.index() < key; });
  if (it == builds_.end() || it->index() != index) {
    throw Error(ErrorCode::kInvalidRange,
                "no build with index " + std::to_string(index));
  }
  return *it;
}

BuildChain BuildChain::with_release(Release release) const {
  auto releases = releases_;
  releases.push_back(std::move(release));
  return BuildChain(builds_, iterations_, std::move(releases));
}

std::vector<TestId> CandidateSet::ids() const {
  std::vector<TestId> out;
  out.reserve(tests.size());
  for (const auto& t : tests) out.push_back(t.id);
  return out;
}

CandidateSet candidate_set(const Build& prev, const Build& next) {
  CandidateSet out;
  // Both test lists are sorted by id.
  auto a = prev.tests().begin();
  auto b = next.tests().begin();
  while (a != prev.tests().end() && b != next.tests().end()) {
    if (a->id < b->id) {
      ++a;
    } else if (b->id < a->id) {
      ++b;
    } else {
      out.tests.push_back(*b);
      ++a;
      ++b;
    }
  }
  for (const auto& s : prev.specs().stories()) {
    if (next.specs().contains(s.id)) {
      out.specs_overlap = true;
      break;
    }
  }
  return out;
}

Region classify_region(bool in_p, bool in_s, bool in_t, bool outside_all) {
  if (outside_all) {
    if (in_p || in_s || in_t) {
      throw Error(ErrorCode::kInvalidClassification,
                  "outside_all contradicts a set membership flag");
    }
    return Region::kRegion8;
  }
  if (in_p && in_s && in_t) return Region::kRegion1;
  if (in_p && in_s) return Region::kRegion2;
  if (in_p && in_t) return Region::kRegion3;
  if (in_s && in_t) return Region::kRegion4;
  if (in_s) return Region::kRegion5;
  if (in_p) return Region::kRegion6;
  if (in_t) return Region::kRegion7;
  throw Error(ErrorCode::kInvalidClassification,
              "no membership flag set and outside_all is false");
}

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::kPeriodicBuild: return "periodic-build";
    case TransitionKind::kNewFeature: return "new-feature";
    case TransitionKind::kDefectFix: return "defect-fix";
    case TransitionKind::kTechDebt: return "tech-debt";
    case TransitionKind::kFeatureWithoutTest: return "feature-without-test";
  }
  return "unknown";
}

std::optional<TransitionKind> parse_transition_kind(std::string_view name) {
  for (auto k : {TransitionKind::kPeriodicBuild, TransitionKind::kNewFeature,
                 TransitionKind::kDefectFix, TransitionKind::kTechDebt,
                 TransitionKind::kFeatureWithoutTest}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

TransitionDelta transition_delta(const Build& prev, const Build& next) {
  return TransitionDelta{
      .program = prev.program().id() != next.program().id(),
      .specs = prev.specs().ids() != next.specs().ids(),
      .tests = id_set(prev.tests()) != id_set(next.tests()),
  };
}

namespace {

std::string describe(TransitionDelta d) {
  auto flag = [](bool b) { return b ? "1" : "0"; };
  return std::string("(dP=") + flag(d.program) + ", dS=" + flag(d.specs) +
         ", dT=" + flag(d.tests) + ")";
}

}  // namespace

UnclassifiableTransition::UnclassifiableTransition(TransitionDelta delta)
    : Error(ErrorCode::kUnclassifiableTransition,
            "delta pattern " + describe(delta) + " matches no transition case"),
      delta_(delta) {}

TransitionKind classify_transition(const Build& prev, const Build& next) {
  if (next.index() != prev.index() + 1) {
    throw Error(ErrorCode::kOrdering,
                "builds " + std::to_string(prev.index()) + " and " +
                    std::to_string(next.index()) + " are not consecutive");
  }
  const TransitionDelta d = transition_delta(prev, next);
  if (!d.program && !d.specs && !d.tests) return TransitionKind::kPeriodicBuild;
  if (d.program && d.specs && d.tests) return TransitionKind::kNewFeature;
  if (d.program && !d.specs && !d.tests) return TransitionKind::kDefectFix;
  if (d.program && d.tests && !d.specs) return TransitionKind::kTechDebt;
  if (d.program && d.specs && !d.tests) return TransitionKind::kFeatureWithoutTest;
  throw UnclassifiableTransition(d);
}

Release make_release(const BuildChain& chain, std::span<const int> iterations) {
  if (iterations.empty()) {
    throw Error(ErrorCode::kInvalidRange, "release needs at least one iteration");
  }
  const int count = static_cast<int>(chain.iterations().size());
  for (std::size_t k = 0; k < iterations.size(); ++k) {
    if (iterations[k] < 1 || iterations[k] > count) {
      throw Error(ErrorCode::kInvalidRange,
                  "iteration " + std::to_string(iterations[k]) +
                      " is not part of the chain");
    }
    if (k > 0 && iterations[k] != iterations[k - 1] + 1) {
      throw Error(ErrorCode::kInvalidRange,
                  "iterations must form a contiguous ascending range");
    }
  }
  Release r;
  r.id = "r" + std::to_string(chain.releases().size() + 1);
  r.source_iterations.assign(iterations.begin(), iterations.end());
  r.build = chain.iterations()[iterations.back() - 1].last_build;
  return r;
}

}  // namespace regchain
