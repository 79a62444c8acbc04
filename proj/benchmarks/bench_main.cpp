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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <string>
#include <vector>

#include "regchain/budget.hpp"
#include "regchain/depgraph.hpp"
#include "regchain/retecs.hpp"
#include "regchain/rng.hpp"
#include "regchain/simulator.hpp"

namespace {

using namespace regchain;

std::string test_id(std::size_t i) {
  auto digits = std::to_string(i);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return "t" + digits;
}

std::vector<TestCase> make_tests(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TestCase> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto units = static_cast<double>(rng.between(1, 30));
    out.push_back({test_id(i), "", "", Duration::from_units(units), Duration{}});
  }
  return out;
}

Window half_of(const std::vector<TestCase>& tests) {
  Duration total;
  for (const auto& t : tests) total += t.duration();
  return Window::of_budget(Duration::micros(total.micros() / 2));
}

void BM_ScopeDp(benchmark::State& state) {
  const auto tests = make_tests(static_cast<std::size_t>(state.range(0)), 1);
  const auto window = half_of(tests);
  for (auto _ : state) benchmark::DoNotOptimize(scope(tests, window));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ScopeDp)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

void BM_ScopeBruteforce(benchmark::State& state) {
  const auto tests = make_tests(static_cast<std::size_t>(state.range(0)), 1);
  const auto window = half_of(tests);
  for (auto _ : state) benchmark::DoNotOptimize(scope_bruteforce(tests, window));
}
BENCHMARK(BM_ScopeBruteforce)->DenseRange(8, 20, 4);

void BM_TtcpExact(benchmark::State& state) {
  const auto tests = make_tests(static_cast<std::size_t>(state.range(0)), 2);
  const auto window = half_of(tests);
  const AgentState agent;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ttcp(tests, agent, nullptr, window, Engine::kExact));
  }
}
BENCHMARK(BM_TtcpExact)->DenseRange(3, static_cast<int>(kTtcpExactLimit), 1);

void BM_TtcpGreedy(benchmark::State& state) {
  const auto tests = make_tests(static_cast<std::size_t>(state.range(0)), 2);
  const auto window = half_of(tests);
  const AgentState agent;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ttcp(tests, agent, nullptr, window, Engine::kGreedy));
  }
}
BENCHMARK(BM_TtcpGreedy)->RangeMultiplier(8)->Range(8, 4096);

// Layered class graph: each class depends on up to three in the next layer.
void BM_AffectedTests(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  std::vector<ClassId> classes;
  std::vector<TestId> tests;
  for (std::size_t i = 0; i < n; ++i) classes.push_back("C" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) tests.push_back(test_id(i));
  std::vector<DepEdge> deps, links;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      const auto j = i + 1 + rng.below(std::min<std::uint64_t>(16, n - i - 1));
      deps.push_back({classes[i], classes[j]});
    }
  }
  for (std::size_t i = 0; i < n; ++i) links.push_back({tests[i], classes[i]});
  const auto graph = build_graph(classes, tests, deps, links);
  const std::set<ClassId> changed{classes[n - 1], classes[n / 2]};
  for (auto _ : state) benchmark::DoNotOptimize(affected_tests(graph, changed, tests));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AffectedTests)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_Scenario(benchmark::State& state, const char* strategy) {
  ScenarioConfig cfg;
  cfg.seed = 11;
  cfg.n_builds = 30;
  cfg.strategy = strategy;
  cfg.window = WindowPolicy::parse("fraction:0.5");
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
}
BENCHMARK_CAPTURE(BM_Scenario, retest_all, "retest-all");
BENCHMARK_CAPTURE(BM_Scenario, retecs, "retecs");
BENCHMARK_CAPTURE(BM_Scenario, depgraph, "depgraph");

}  // namespace

BENCHMARK_MAIN();
