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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "regchain/error.hpp"
#include "regchain/model.hpp"
#include "regchain/rng.hpp"

#define EXPECT_ERROR_CODE(stmt, expected_code)                                 \
  do {                                                                         \
    try {                                                                      \
      stmt;                                                                    \
      ADD_FAILURE() << "expected " << ::regchain::to_string(expected_code)     \
                    << " from: " #stmt;                                        \
    } catch (const ::regchain::Error& e_) {                                    \
      EXPECT_EQ(e_.code(), expected_code) << e_.what();                        \
    }                                                                          \
  } while (0)

namespace support {

using namespace regchain;

inline TestCase tc(const std::string& id, double exec_units, double setup_units = 0.0) {
  return TestCase{id, "in-" + id, "exp-" + id, Duration::from_units(exec_units),
                  Duration::from_units(setup_units)};
}

inline std::vector<UserStory> stories(std::initializer_list<const char*> ids) {
  std::vector<UserStory> out;
  for (const char* id : ids) out.push_back(UserStory{id, 1.0, 1.0});
  return out;
}

// Every test gets outcome "ok" unless overridden.
inline Build build(BuildIndex index, ProgramId program, std::vector<UserStory> specs,
                   std::vector<TestCase> tests, double ready_units = -1,
                   std::map<TestId, Outcome> overrides = {}) {
  std::map<TestId, Outcome> behavior;
  for (const auto& t : tests) behavior[t.id] = "ok";
  for (auto& [id, out] : overrides) behavior[id] = out;
  const double ready = ready_units < 0 ? 10.0 * index : ready_units;
  return Build(index, ProgramVersion(program, std::move(behavior)), SpecSet(std::move(specs)),
               std::move(tests), Duration::from_units(ready));
}

inline std::string tid(std::size_t i) {
  return (i < 10 ? "t0" : "t") + std::to_string(i);
}

// n tests with integer costs in [1, max_cost].
inline std::vector<TestCase> random_tests(Rng& rng, std::size_t n, int max_cost = 20) {
  std::vector<TestCase> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(tc(tid(i), static_cast<double>(rng.between(1, max_cost))));
  }
  return out;
}

inline Duration total_cost(const std::vector<TestCase>& tests) {
  Duration d;
  for (const auto& t : tests) d += t.duration();
  return d;
}

inline std::vector<TestId> ids_of(const std::vector<TestCase>& tests) {
  std::vector<TestId> out;
  for (const auto& t : tests) out.push_back(t.id);
  return out;
}

}  // namespace support
