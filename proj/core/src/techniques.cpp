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

#include "regchain/techniques.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "regchain/depgraph.hpp"
#include "regchain/rng.hpp"

namespace regchain {

QualityMetric QualityMetric::scaled(double factor) const {
  auto inner = fn_;
  return QualityMetric(name_, [inner, factor](std::span<const TestId> order)
                                  -> std::optional<double> {
    auto v = inner(order);
    if (!v) return std::nullopt;
    return *v * factor;
  });
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kApfd: return "apfd";
    case MetricKind::kFaultCount: return "fault-count";
    case MetricKind::kCoverage: return "coverage";
  }
  return "unknown";
}

MetricKind parse_metric_kind(std::string_view name) {
  for (auto k : {MetricKind::kApfd, MetricKind::kFaultCount, MetricKind::kCoverage}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kConfiguration,
              "unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(Engine engine) {
  return engine == Engine::kExact ? "exact" : "greedy";
}

Engine parse_engine(std::string_view name) {
  if (name == "exact") return Engine::kExact;
  if (name == "greedy") return Engine::kGreedy;
  throw Error(ErrorCode::kConfiguration,
              "unknown engine '" + std::string(name) + "'");
}

QualityMetric bind_metric(MetricKind kind, const EvalContext& context) {
  switch (kind) {
    case MetricKind::kApfd:
      return QualityMetric(
          "apfd", [faults = context.faults](std::span<const TestId> order)
                      -> std::optional<double> {
            if (order.empty() || faults.empty()) return std::nullopt;
            return apfd(order, faults).value;
          });
    case MetricKind::kFaultCount:
      return QualityMetric(
          "fault-count", [faults = context.faults](std::span<const TestId> order)
                             -> std::optional<double> {
            const std::set<TestId> run(order.begin(), order.end());
            int detected = 0;
            for (const auto& [id, detecting] : faults) {
              for (const auto& t : detecting) {
                if (run.contains(t)) {
                  ++detected;
                  break;
                }
              }
            }
            return detected;
          });
    case MetricKind::kCoverage:
      return QualityMetric(
          "coverage", [coverage = context.coverage](std::span<const TestId> order)
                          -> std::optional<double> {
            if (coverage.empty()) return std::nullopt;
            const std::set<TestId> run(order.begin(), order.end());
            int hit = 0;
            for (const auto& [story, tests] : coverage) {
              for (const auto& t : tests) {
                if (run.contains(t)) {
                  ++hit;
                  break;
                }
              }
            }
            return static_cast<double>(hit) / static_cast<double>(coverage.size());
          });
  }
  throw Error(ErrorCode::kConfiguration, "unknown metric kind");
}

ApfdReport apfd(std::span<const TestId> order, const FaultMatrix& faults) {
  if (faults.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "APFD needs at least one fault");
  }
  if (order.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "APFD of an empty order");
  }
  const double n = static_cast<double>(order.size());
  const double m = static_cast<double>(faults.size());
  ApfdReport report;
  double tf_sum = 0.0;
  for (const auto& [id, detecting] : faults) {
    std::size_t position = order.size() + 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (detecting.contains(order[i])) {
        position = i + 1;
        break;
      }
    }
    if (position == order.size() + 1) report.undetected.push_back(id);
    tf_sum += static_cast<double>(position);
  }
  report.value = 1.0 - tf_sum / (n * m) + 1.0 / (2.0 * n);
  return report;
}

std::vector<TestId> Schedule::ids() const {
  std::vector<TestId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.id);
  return out;
}

Schedule make_schedule(std::span<const TestId> order,
                       std::span<const TestCase> pool, std::string technique) {
  std::map<TestId, const TestCase*> by_id;
  for (const auto& t : pool) by_id.emplace(t.id, &t);
  Schedule s;
  s.technique = std::move(technique);
  std::set<TestId> seen;
  for (const auto& id : order) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kUndefinedExecution,
                  "test '" + id + "' is not in the candidate pool");
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kMalformedBuild,
                  "test '" + id + "' appears twice in a schedule");
    }
    const Duration d = cost(*it->second);
    s.entries.push_back({id, d});
    s.total_cost += d;
  }
  return s;
}

Schedule schedule_under_budget(const Schedule& order, const Window& window) {
  const Budget budget = window.budget();
  if (budget.is_unbounded()) return order;
  Schedule out = order;
  out.entries.clear();
  out.total_cost = Duration{};
  for (const auto& e : order.entries) {
    if (!budget.admits(out.total_cost + e.duration)) break;
    out.entries.push_back(e);
    out.total_cost += e.duration;
  }
  return out;
}

bool covers_all(std::span<const TestId> tests, const RequirementCoverage& coverage) {
  const std::set<TestId> chosen(tests.begin(), tests.end());
  for (const auto& [story, satisfying] : coverage) {
    bool hit = false;
    for (const auto& t : satisfying) {
      if (chosen.contains(t)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

std::vector<TestId> rtm_minimize(std::span<const TestCase> candidates,
                                 const RequirementCoverage& coverage,
                                 Engine engine) {
  std::vector<TestId> ids;
  for (const auto& t : candidates) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());
  const std::set<TestId> known(ids.begin(), ids.end());
  for (const auto& [story, satisfying] : coverage) {
    if (satisfying.empty()) {
      throw Error(ErrorCode::kUnsatisfiableRequirement,
                  "requirement '" + story + "' has no satisfying test");
    }
    for (const auto& t : satisfying) {
      if (!known.contains(t)) {
        throw Error(ErrorCode::kReferentialIntegrity,
                    "requirement '" + story + "' references test '" + t +
                        "' outside the candidate set");
      }
    }
  }

  // requirements hit by each candidate
  std::vector<std::set<StoryId>> hits(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (const auto& [story, satisfying] : coverage) {
      if (satisfying.contains(ids[i])) hits[i].insert(story);
    }
  }

  if (engine == Engine::kGreedy) {
    std::set<StoryId> uncovered;
    for (const auto& [story, _] : coverage) uncovered.insert(story);
    std::vector<TestId> chosen;
    std::vector<bool> used(ids.size(), false);
    while (!uncovered.empty()) {
      std::size_t best = ids.size();
      std::size_t best_gain = 0;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (used[i]) continue;
        std::size_t gain = 0;
        for (const auto& s : hits[i]) gain += uncovered.count(s);
        if (gain > best_gain) {
          best_gain = gain;
          best = i;
        }
      }
      used[best] = true;
      chosen.push_back(ids[best]);
      for (const auto& s : hits[best]) uncovered.erase(s);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  if (ids.size() > kRtmExactLimit) {
    throw Error(ErrorCode::kEngineLimit,
                "exact minimization is limited to " +
                    std::to_string(kRtmExactLimit) +
                    " candidates; use the greedy engine");
  }
  std::vector<TestId> best;
  bool found = false;
  const std::uint32_t n = static_cast<std::uint32_t>(ids.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (found && static_cast<std::size_t>(std::popcount(mask)) > best.size()) {
      continue;
    }
    std::vector<TestId> subset;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(ids[i]);
    }
    if (!covers_all(subset, coverage)) continue;
    if (!found || subset.size() < best.size() ||
        (subset.size() == best.size() && subset < best)) {
      best = std::move(subset);
      found = true;
    }
  }
  return best;
}

Selector parse_selector(std::string_view name, SelectorOptions options) {
  if (name == "retest-all") return RetestAllSelector{};
  if (name == "random-k") return RandomKSelector{options.k, options.seed};
  if (name == "depgraph") {
    if (!options.graph) {
      throw Error(ErrorCode::kConfiguration,
                  "depgraph selector needs a dependency graph");
    }
    return DependencyGraphSelector{std::move(options.graph),
                                   std::move(options.changed_classes)};
  }
  throw Error(ErrorCode::kConfiguration,
              "unknown selector '" + std::string(name) + "'");
}

std::vector<TestId> rts_select(const Build& prev, const Build& next,
                               const Selector& selector) {
  const std::vector<TestId> candidates = candidate_set(prev, next).ids();
  struct Visitor {
    const std::vector<TestId>& candidates;

    std::vector<TestId> operator()(const RetestAllSelector&) const {
      return candidates;
    }
    std::vector<TestId> operator()(const DependencyGraphSelector& s) const {
      return affected_tests(*s.graph, s.changed_classes, candidates);
    }
    std::vector<TestId> operator()(const RandomKSelector& s) const {
      std::vector<TestId> pool = candidates;
      Rng rng(s.seed);
      rng.shuffle(pool);
      pool.resize(std::min(s.k, pool.size()));
      std::sort(pool.begin(), pool.end());
      return pool;
    }
  };
  return std::visit(Visitor{candidates}, selector);
}

namespace {

double rank_value(const std::optional<double>& v) {
  return v ? *v : -std::numeric_limits<double>::infinity();
}

}  // namespace

Schedule rtp_prioritize(std::span<const TestCase> candidates,
                        const QualityMetric& metric, Engine engine) {
  std::vector<TestId> ids;
  for (const auto& t : candidates) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());

  if (engine == Engine::kExact) {
    if (ids.size() > kRtpExactLimit) {
      throw Error(ErrorCode::kEngineLimit,
                  "exact prioritization is limited to " +
                      std::to_string(kRtpExactLimit) +
                      " candidates; use the greedy engine");
    }
    std::vector<TestId> perm = ids;
    std::vector<TestId> best = perm;
    double best_value = rank_value(metric(perm));
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double v = rank_value(metric(perm));
      if (v > best_value) {
        best_value = v;
        best = perm;
      }
    }
    auto s = make_schedule(best, candidates, "rtp-exact");
    s.params["metric"] = metric.name();
    return s;
  }

  std::vector<TestId> order;
  std::vector<TestId> remaining = ids;
  while (!remaining.empty()) {
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    bool have = false;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      order.push_back(remaining[i]);
      const double v = rank_value(metric(order));
      order.pop_back();
      if (!have || v > best_value) {
        best_value = v;
        best = i;
        have = true;
      }
    }
    order.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  auto s = make_schedule(order, candidates, "rtp-greedy");
  s.params["metric"] = metric.name();
  return s;
}

}  // namespace regchain
