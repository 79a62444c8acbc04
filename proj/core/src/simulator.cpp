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

#include "regchain/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "regchain/regall.hpp"
#include "regchain/rng.hpp"

namespace regchain {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kConfiguration,
                "window: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

Budget parse_budget(std::string_view text) {
  if (text == "inf") return Budget::unbounded();
  const double units = parse_double(text, "budget");
  if (units < 0) throw Error(ErrorCode::kConfiguration, "window: negative budget");
  return Budget::of(Duration::from_units(units));
}

std::string budget_text(const Budget& b) {
  return b.is_unbounded() ? "inf" : format_units(b.limit());
}

std::string padded(char prefix, int n) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%c%03d", prefix, n);
  return buf;
}

}  // namespace

WindowPolicy WindowPolicy::parse(std::string_view text) {
  WindowPolicy p;
  if (text == "inf" || text == "unbounded") return p;
  if (text == "chain") {
    p.kind = Kind::kChain;
    return p;
  }
  const std::map<std::string_view, int> presets = {
      {"commit", 5}, {"nightly", 30}, {"sprint", 120}, {"release", 600}};
  if (auto it = presets.find(text); it != presets.end()) {
    p.kind = Kind::kFixed;
    p.fixed = Duration::units(it->second);
    return p;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kConfiguration,
                "window: unknown policy '" + std::string(text) + "'");
  }
  const auto head = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (head == "fixed") {
    const Budget b = parse_budget(body);
    if (b.is_unbounded()) return p;
    p.kind = Kind::kFixed;
    p.fixed = b.limit();
    return p;
  }
  if (head == "fraction") {
    p.kind = Kind::kSuiteFraction;
    p.fraction = parse_double(body, "fraction");
    if (p.fraction < 0) throw Error(ErrorCode::kConfiguration, "window: negative fraction");
    return p;
  }
  if (head == "list") {
    p.kind = Kind::kList;
    std::size_t start = 0;
    while (start <= body.size()) {
      const auto comma = body.find(',', start);
      const auto item = body.substr(start, comma == std::string_view::npos
                                               ? std::string_view::npos
                                               : comma - start);
      if (!item.empty()) p.budgets.push_back(parse_budget(item));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return p;
  }
  throw Error(ErrorCode::kConfiguration,
              "window: unknown policy '" + std::string(text) + "'");
}

std::string WindowPolicy::to_string() const {
  switch (kind) {
    case Kind::kUnbounded: return "inf";
    case Kind::kChain: return "chain";
    case Kind::kFixed: return "fixed:" + format_units(fixed);
    case Kind::kSuiteFraction: {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, fraction);
      (void)ec;
      return "fraction:" + std::string(buf, ptr);
    }
    case Kind::kList: {
      std::string out = "list:";
      for (std::size_t i = 0; i < budgets.size(); ++i) {
        if (i) out += ",";
        out += budget_text(budgets[i]);
      }
      return out;
    }
  }
  return "inf";
}

std::vector<Window> windows_for(const WindowPolicy& policy, const BuildChain& chain) {
  const auto& builds = chain.builds();
  const std::size_t n = builds.empty() ? 0 : builds.size() - 1;
  if (policy.kind == WindowPolicy::Kind::kList && policy.budgets.size() != n) {
    throw Error(ErrorCode::kConfiguration,
                "window: list has " + std::to_string(policy.budgets.size()) +
                    " budgets for " + std::to_string(n) + " transitions");
  }
  Duration suite;
  if (!builds.empty()) {
    for (const auto& t : builds.front().tests()) suite += t.duration();
  }
  std::vector<Window> out;
  for (std::size_t k = 0; k < n; ++k) {
    const Timestamp start = builds[k].ready_at();
    switch (policy.kind) {
      case WindowPolicy::Kind::kUnbounded:
        out.push_back(Window::unbounded(start));
        break;
      case WindowPolicy::Kind::kFixed:
        out.push_back(Window::bounded(start, start + policy.fixed));
        break;
      case WindowPolicy::Kind::kList: {
        const Budget& b = policy.budgets[k];
        out.push_back(b.is_unbounded() ? Window::unbounded(start)
                                       : Window::bounded(start, start + b.limit()));
        break;
      }
      case WindowPolicy::Kind::kChain:
        out.push_back(Window::bounded(start, builds[k + 1].ready_at()));
        break;
      case WindowPolicy::Kind::kSuiteFraction: {
        const auto micros = static_cast<std::int64_t>(std::llround(
            static_cast<double>(suite.micros()) * policy.fraction));
        out.push_back(Window::bounded(start, start + Duration::micros(micros)));
        break;
      }
    }
  }
  return out;
}

void ScenarioConfig::validate() const {
  const auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::kConfiguration, field + ": " + why);
  };
  if (n_builds < 1) fail("n_builds", "must be positive");
  if (n_tests < 1) fail("n_tests", "must be positive");
  if (n_stories < 1) fail("n_stories", "must be positive");
  if (n_classes < 1) fail("n_classes", "must be positive");
  if (builds_per_iteration < 1) fail("builds_per_iteration", "must be positive");
  double total = 0.0;
  for (const auto& [kind, p] : mix) {
    if (p < 0.0) fail("mix", "negative probability for " + std::string(to_string(kind)));
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) fail("mix", "probabilities must sum to 1");
  if (fault_rate < 0.0 || fault_rate > 1.0) fail("fault_rate", "must lie in [0, 1]");
  if (fault_prone_fraction < 0.0 || fault_prone_fraction > 1.0) {
    fail("fault_prone_fraction", "must lie in [0, 1]");
  }
  if (strategy != "retest-all" && strategy != "random-k" && strategy != "retecs" &&
      strategy != "depgraph") {
    fail("strategy", "unknown strategy '" + strategy + "'");
  }
  try {
    parse_metric_kind(metric);
  } catch (const Error&) {
    fail("metric", "unknown metric '" + metric + "'");
  }
  if (!(agent.decay > 0.0 && agent.decay <= 1.0)) fail("agent.decay", "must lie in (0, 1]");
  if (agent.reward < 0.0) fail("agent.reward", "must be non-negative");
  if (agent.buffer_capacity < 1) fail("agent.buffer_capacity", "must be positive");
  if (window.kind == WindowPolicy::Kind::kList &&
      window.budgets.size() != static_cast<std::size_t>(n_builds - 1)) {
    fail("window", "list needs one budget per transition");
  }
}

namespace {

// Mutable working copy of the build being generated.
struct Draft {
  ProgramId program = 1;
  std::vector<UserStory> stories;
  std::vector<TestCase> tests;
  std::map<TestId, int> revision;
  int next_test = 1;
  int next_story = 1;
};

TestCase random_test(Rng& rng, const TestId& id) {
  TestCase t;
  t.id = id;
  t.inp = "in-" + id;
  t.expected = "exp-" + id;
  t.exectime = Duration::micros(rng.between(1, 20) * Duration::kMicrosPerUnit / 2);
  t.setup = Duration::micros(rng.between(0, 4) * Duration::kMicrosPerUnit / 2);
  return t;
}

UserStory random_story(Rng& rng, const StoryId& id) {
  static constexpr int kPoints[] = {1, 2, 3, 5, 8};
  return UserStory{id, static_cast<double>(rng.between(1, 10)),
                   static_cast<double>(kPoints[rng.below(5)])};
}

TransitionKind sample_kind(Rng& rng, const std::map<TransitionKind, double>& mix) {
  const double u = rng.uniform();
  double acc = 0.0;
  TransitionKind last = TransitionKind::kPeriodicBuild;
  for (const auto& [kind, p] : mix) {
    if (p <= 0.0) continue;
    acc += p;
    last = kind;
    if (u < acc) return kind;
  }
  return last;
}

class Generator {
 public:
  explicit Generator(const ScenarioConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  GeneratedScenario run() {
    for (int c = 1; c <= cfg_.n_classes; ++c) classes_.push_back(padded('C', c));
    if (cfg_.n_classes > 1) {
      std::set<DepEdge> deps;
      for (int i = 0; i < cfg_.n_classes; ++i) {
        const int fanout = 1 + (rng_.bernoulli(0.3) ? 1 : 0);
        for (int f = 0; f < fanout; ++f) {
          auto j = static_cast<int>(rng_.below(static_cast<std::uint64_t>(cfg_.n_classes - 1)));
          if (j >= i) ++j;
          deps.insert(DepEdge{classes_[i], classes_[j]});
        }
      }
      out_.scenario.class_deps.assign(deps.begin(), deps.end());
    }

    for (int s = 0; s < cfg_.n_stories; ++s) add_story();
    for (int t = 0; t < cfg_.n_tests; ++t) {
      add_test(draft_.stories[static_cast<std::size_t>(t % cfg_.n_stories)].id);
    }
    std::vector<TestId> ids;
    for (const auto& t : draft_.tests) ids.push_back(t.id);
    rng_.shuffle(ids);
    const auto prone = static_cast<std::size_t>(
        std::ceil(cfg_.fault_prone_fraction * static_cast<double>(ids.size())));
    fault_prone_.insert(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(prone));

    Timestamp ready;
    std::vector<Build> builds;
    builds.push_back(snapshot(1, ready));
    for (int index = 2; index <= cfg_.n_builds; ++index) {
      ready += Duration::units(rng_.between(10, 100));
      const TransitionKind kind = sample_kind(rng_, cfg_.mix);
      out_.kinds.push_back(kind);
      transition(kind, index);
      builds.push_back(snapshot(index, ready));
    }

    std::vector<Iteration> iterations;
    for (int first = 1; first <= cfg_.n_builds; first += cfg_.builds_per_iteration) {
      iterations.push_back(
          {first, std::min(cfg_.n_builds, first + cfg_.builds_per_iteration - 1)});
    }
    out_.scenario.chain = BuildChain(std::move(builds), std::move(iterations));
    out_.scenario.test_links.assign(links_.begin(), links_.end());
    return std::move(out_);
  }

 private:
  void add_story() {
    const StoryId id = padded('s', draft_.next_story++);
    draft_.stories.push_back(random_story(rng_, id));
  }

  void add_test(const StoryId& story) {
    const TestId id = padded('t', draft_.next_test++);
    draft_.tests.push_back(random_test(rng_, id));
    draft_.revision[id] = 0;
    out_.scenario.coverage[story].insert(id);
    const int fanout = 1 + (rng_.bernoulli(0.4) ? 1 : 0);
    for (int f = 0; f < fanout; ++f) {
      links_.insert(DepEdge{id, classes_[rng_.below(classes_.size())]});
    }
  }

  void transition(TransitionKind kind, BuildIndex index) {
    const std::vector<TestCase> before = draft_.tests;
    switch (kind) {
      case TransitionKind::kPeriodicBuild:
        return;
      case TransitionKind::kNewFeature: {
        add_story();
        const StoryId story = draft_.stories.back().id;
        const int count = 1 + (rng_.bernoulli(0.5) ? 1 : 0);
        for (int i = 0; i < count; ++i) add_test(story);
        break;
      }
      case TransitionKind::kDefectFix:
        break;
      case TransitionKind::kTechDebt:
        if (draft_.tests.size() > 1 && rng_.bernoulli(0.5)) {
          const auto victim = rng_.below(draft_.tests.size());
          draft_.tests.erase(draft_.tests.begin() + static_cast<std::ptrdiff_t>(victim));
        } else {
          add_test(draft_.stories[rng_.below(draft_.stories.size())].id);
        }
        break;
      case TransitionKind::kFeatureWithoutTest:
        add_story();
        break;
    }
    ++draft_.program;

    std::set<ClassId> changed;
    const int touched = 1 + static_cast<int>(rng_.below(2));
    for (int i = 0; i < touched; ++i) changed.insert(classes_[rng_.below(classes_.size())]);

    // Regression candidates: tests present before and after.
    std::vector<TestId> shared;
    for (const auto& t : draft_.tests) {
      if (std::any_of(before.begin(), before.end(),
                      [&](const TestCase& b) { return b.id == t.id; })) {
        shared.push_back(t.id);
      }
    }
    std::vector<TestId> prone;
    for (const auto& id : shared) {
      if (fault_prone_.contains(id)) prone.push_back(id);
    }

    int faults = 0;
    for (int slot = 0; slot < 3; ++slot) faults += rng_.bernoulli(cfg_.fault_rate) ? 1 : 0;
    if (kind == TransitionKind::kDefectFix && faults == 0) faults = 1;
    if (shared.empty()) faults = 0;
    for (int f = 1; f <= faults; ++f) {
      Fault fault;
      fault.id = "F" + std::to_string(index) + "." + std::to_string(f);
      fault.build = index;
      const bool from_prone = !prone.empty() && rng_.bernoulli(0.8);
      const auto& pool = from_prone ? prone : shared;
      fault.detecting.insert(pool[rng_.below(pool.size())]);
      if (rng_.bernoulli(0.3)) fault.detecting.insert(shared[rng_.below(shared.size())]);
      for (const auto& t : fault.detecting) {
        ++draft_.revision[t];
        for (const auto& link : links_) {
          if (link.from == t) {
            changed.insert(link.to);
            break;
          }
        }
      }
      out_.scenario.faults.push_back(std::move(fault));
    }
    out_.scenario.changed_classes[index] = std::move(changed);
  }

  Build snapshot(BuildIndex index, Timestamp ready) const {
    std::map<TestId, Outcome> behavior;
    for (const auto& t : draft_.tests) {
      behavior[t.id] = t.id + "#" + std::to_string(draft_.revision.at(t.id));
    }
    return Build(index, ProgramVersion(draft_.program, std::move(behavior)),
                 SpecSet(draft_.stories), draft_.tests, ready);
  }

  const ScenarioConfig& cfg_;
  Rng rng_;
  Draft draft_;
  std::vector<ClassId> classes_;
  std::set<DepEdge> links_;
  std::set<TestId> fault_prone_;
  GeneratedScenario out_;
};

}  // namespace

GeneratedScenario generate_chain(const ScenarioConfig& cfg) {
  cfg.validate();
  return Generator(cfg).run();
}

StrategyFactory make_strategy(const ScenarioConfig& cfg, const Scenario& scenario) {
  if (cfg.strategy == "retest-all") {
    return [] { return std::make_unique<RetestAllStrategy>(); };
  }
  if (cfg.strategy == "random-k") {
    return [k = cfg.random_k, seed = cfg.seed] {
      return std::make_unique<RandomKStrategy>(k, seed);
    };
  }
  if (cfg.strategy == "retecs") {
    const MetricKind metric = parse_metric_kind(cfg.metric);
    return [params = cfg.agent, metric, engine = cfg.engine] {
      return std::make_unique<RetecsStrategy>(params, metric, engine);
    };
  }
  if (cfg.strategy == "depgraph") {
    return [graph = scenario.graph()] {
      return std::make_unique<DepGraphStrategy>(graph);
    };
  }
  throw Error(ErrorCode::kConfiguration, "unknown strategy '" + cfg.strategy + "'");
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  const auto generated = generate_chain(cfg);
  const Scenario& scenario = generated.scenario;
  const MetricKind metric = parse_metric_kind(cfg.metric);
  const auto windows = windows_for(cfg.window, scenario.chain);
  auto strategy = make_strategy(cfg, scenario)();
  const auto steps = run_live(*strategy, scenario, windows, metric);

  RunReport report;
  report.seed = cfg.seed;
  report.strategy = strategy->name();
  report.metric = cfg.metric;
  report.trace = make_trace(strategy->name(), scenario, windows, steps);

  const auto& builds = scenario.chain.builds();
  double apfd_sum = 0.0;
  std::size_t apfd_rows = 0;
  std::size_t active = 0;
  std::size_t detected = 0;
  for (std::size_t k = 1; k < builds.size(); ++k) {
    const Build& prev = builds[k - 1];
    const Build& next = builds[k];
    const LiveStep& step = steps[k];
    const EvalContext ctx = scenario.context_for(prev, next);
    const auto ids = step.schedule.ids();

    ReportRow row;
    row.build = next.index();
    row.kind = classify_transition(prev, next);
    row.candidates = candidate_set(prev, next).tests.size();
    row.schedule = ids;
    row.cost = step.schedule.total_cost;
    row.budget = windows[k - 1].budget();
    row.q_value = step.q_value;
    row.apfd = bind_metric(MetricKind::kApfd, ctx)(ids);
    row.faults_active = ctx.faults.size();
    const std::set<TestId> ran(ids.begin(), ids.end());
    for (const auto& [fault, detecting] : ctx.faults) {
      if (std::any_of(detecting.begin(), detecting.end(),
                      [&](const TestId& t) { return ran.contains(t); })) {
        ++row.faults_detected;
      }
    }
    row.failures = static_cast<std::size_t>(std::count_if(
        step.verdicts.begin(), step.verdicts.end(),
        [](const Verdict& v) { return !v.consistent; }));
    if (windows[k - 1].is_unbounded()) {
      const auto full = reg_all(prev, next, windows[k - 1]);
      row.regall = full.result;
      auto executed = step.verdicts;
      std::sort(executed.begin(), executed.end(),
                [](const Verdict& a, const Verdict& b) { return a.test_id < b.test_id; });
      row.regall_equivalent = executed == full.verdicts;
    }
    if (row.apfd) {
      apfd_sum += *row.apfd;
      ++apfd_rows;
    }
    active += row.faults_active;
    detected += row.faults_detected;
    report.total_cost += row.cost;
    report.rows.push_back(std::move(row));
  }
  if (apfd_rows > 0) report.mean_apfd = apfd_sum / static_cast<double>(apfd_rows);
  if (active > 0) {
    report.recall = static_cast<double>(detected) / static_cast<double>(active);
  }
  return report;
}

std::vector<RunReport> run_scenarios(const std::vector<ScenarioConfig>& configs,
                                     unsigned threads) {
  std::vector<RunReport> out(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        out[i] = run_scenario(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace regchain
