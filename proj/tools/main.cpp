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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "regchain/arta.hpp"
#include "regchain/budget.hpp"
#include "regchain/io.hpp"
#include "regchain/regall.hpp"
#include "regchain/simulator.hpp"
#include "regchain/techniques.hpp"

namespace {

using regchain::Error;
using regchain::ErrorCode;
using Json = nlohmann::ordered_json;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c, std::string format_help) {
  cmd->add_option("--seed", c.seed, "Override the scenario seed");
  cmd->add_option("--config", c.config, "Scenario config JSON");
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_option("--format", c.format, std::move(format_help));
}

void emit(const Common& c, const std::string& content) {
  if (c.out.empty()) {
    std::cout << content;
  } else {
    regchain::write_file(c.out, content);
  }
}

regchain::ScenarioConfig load_config(const Common& c) {
  regchain::ScenarioConfig cfg;
  if (!c.config.empty()) cfg = regchain::config_from_json(regchain::read_file(c.config));
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

// Scenario-shaping flags shared by simulate and trace.
struct ScenarioFlags {
  std::optional<int> builds;
  std::optional<int> tests;
  std::optional<std::string> strategy;
  std::optional<std::string> window;
  std::optional<std::string> metric;
  std::optional<std::string> engine;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("--builds", f.builds, "Number of builds");
  cmd->add_option("--tests", f.tests, "Number of initial tests");
  cmd->add_option("--strategy", f.strategy, "retest-all | random-k | retecs | depgraph");
  cmd->add_option("--window", f.window,
                  "inf | chain | fixed:<u> | fraction:<f> | list:<u>,... | "
                  "commit | nightly | sprint | release");
  cmd->add_option("--metric", f.metric, "apfd | fault-count | coverage");
  cmd->add_option("--engine", f.engine, "greedy | exact");
}

void apply(const ScenarioFlags& f, regchain::ScenarioConfig& cfg) {
  if (f.builds) cfg.n_builds = *f.builds;
  if (f.tests) cfg.n_tests = *f.tests;
  if (f.strategy) cfg.strategy = *f.strategy;
  if (f.window) cfg.window = regchain::WindowPolicy::parse(*f.window);
  if (f.metric) cfg.metric = *f.metric;
  if (f.engine) cfg.engine = regchain::parse_engine(*f.engine);
}

// One transition of an ingested history: --history FILE [--build N].
struct TransitionFlags {
  std::string history;
  std::optional<int> build;
};

void add_transition_flags(CLI::App* cmd, TransitionFlags& t) {
  cmd->add_option("--history", t.history, "History JSON")->required();
  cmd->add_option("--build", t.build,
                  "Index of the later build of the transition (default: last)");
}

struct Transition {
  regchain::IngestedHistory data;
  const regchain::Build* prev = nullptr;
  const regchain::Build* next = nullptr;
  std::vector<regchain::TestCase> candidates;
  regchain::EvalContext context;
};

Transition load_transition(const TransitionFlags& t) {
  Transition out;
  out.data = regchain::ingest_history(t.history);
  const auto& builds = out.data.scenario.chain.builds();
  if (builds.size() < 2) {
    throw Error(ErrorCode::kInvalidRange, "history has no transition");
  }
  std::size_t k = builds.size() - 1;
  if (t.build) {
    k = builds.size();
    for (std::size_t i = 1; i < builds.size(); ++i) {
      if (builds[i].index() == *t.build) k = i;
    }
    if (k == builds.size()) {
      throw Error(ErrorCode::kInvalidRange,
                  "no transition into build " + std::to_string(*t.build));
    }
  }
  out.prev = &builds[k - 1];
  out.next = &builds[k];
  out.candidates = regchain::candidate_set(*out.prev, *out.next).tests;
  out.context = out.data.scenario.context_for(*out.prev, *out.next);
  return out;
}

regchain::Window window_from(const std::optional<double>& budget) {
  return budget ? regchain::Window::of_budget(regchain::Duration::from_units(*budget))
                : regchain::Window::unbounded();
}

Json budget_json(const regchain::Window& w) {
  return w.is_unbounded() ? Json("inf") : Json(w.budget().limit().to_units());
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string render_ids(const Common& c, const Json& doc, const std::vector<std::string>& ids) {
  if (c.format == "text") {
    std::string out;
    for (const auto& id : ids) out += id + "\n";
    return out;
  }
  if (c.format != "json") {
    throw Error(ErrorCode::kConfiguration, "unknown format '" + c.format + "'");
  }
  return doc.dump(2) + "\n";
}

Json verdicts_json(const std::vector<regchain::Verdict>& verdicts) {
  Json out = Json::array();
  for (const auto& v : verdicts) {
    out.push_back({{"test_id", v.test_id},
                   {"outcome_prev", v.outcome_prev},
                   {"outcome_next", v.outcome_next},
                   {"consistent", v.consistent}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-budgeted regression test scheduling over build chains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "regchain 0.1.0");

  // simulate
  Common sim;
  ScenarioFlags sim_flags;
  std::string sim_trace_out;
  std::string sim_history_out;
  auto* simulate = app.add_subcommand("simulate", "Generate a chain and run a strategy over it");
  add_common(simulate, sim, "json | csv");
  add_scenario_flags(simulate, sim_flags);
  simulate->add_option("--trace-out", sim_trace_out, "Also write the trace JSON here");
  simulate->add_option("--history-out", sim_history_out,
                       "Also write the generated history JSON here");

  // schedule
  Common sched;
  TransitionFlags sched_t;
  std::optional<double> sched_budget;
  std::string sched_strategy = "retest-all";
  std::string sched_metric = "apfd";
  auto* schedule = app.add_subcommand("schedule", "Scope and schedule one transition");
  add_common(schedule, sched, "json | text");
  add_transition_flags(schedule, sched_t);
  schedule->add_option("--budget", sched_budget, "Window length in units (default: unbounded)");
  schedule->add_option("--strategy", sched_strategy, "retest-all | random-k | retecs | depgraph");
  schedule->add_option("--metric", sched_metric, "Planning metric for retecs");

  // minimize
  Common mini;
  TransitionFlags mini_t;
  std::string mini_engine = "greedy";
  auto* minimize = app.add_subcommand("minimize", "Minimal requirement cover of one transition");
  add_common(minimize, mini, "json | text");
  add_transition_flags(minimize, mini_t);
  minimize->add_option("--engine", mini_engine, "greedy | exact");

  // select
  Common sel;
  TransitionFlags sel_t;
  std::string sel_selector = "retest-all";
  std::size_t sel_k = 5;
  auto* select = app.add_subcommand("select", "Select tests for one transition");
  add_common(select, sel, "json | text");
  add_transition_flags(select, sel_t);
  select->add_option("--selector", sel_selector, "retest-all | depgraph | random-k");
  select->add_option("--k", sel_k, "Sample size for random-k");

  // prioritize
  Common prio;
  TransitionFlags prio_t;
  std::string prio_metric = "apfd";
  std::string prio_engine = "greedy";
  std::optional<double> prio_budget;
  auto* prioritize = app.add_subcommand("prioritize", "Order one transition's candidates");
  add_common(prioritize, prio, "json | text");
  add_transition_flags(prioritize, prio_t);
  prioritize->add_option("--metric", prio_metric, "apfd | fault-count | coverage");
  prioritize->add_option("--engine", prio_engine, "greedy | exact");
  prioritize->add_option("--budget", prio_budget, "Cut the order to this many units");

  // regall
  Common reg;
  TransitionFlags reg_t;
  auto* regall = app.add_subcommand("regall", "Retest-all verdict of one transition");
  add_common(regall, reg, "json | text");
  add_transition_flags(regall, reg_t);

  // trace
  auto* trace = app.add_subcommand("trace", "Record, replay or check per-build traces");
  trace->require_subcommand(1);
  Common rec;
  ScenarioFlags rec_flags;
  auto* record = trace->add_subcommand("record", "Run a strategy and write its trace");
  add_common(record, rec, "json");
  add_scenario_flags(record, rec_flags);

  Common rep;
  ScenarioFlags rep_flags;
  std::string rep_trace;
  std::string rep_history;
  auto* replay = trace->add_subcommand("replay", "Re-execute a trace against its chain");
  add_common(replay, rep, "json");
  add_scenario_flags(replay, rep_flags);
  replay->add_option("--trace", rep_trace, "Trace JSON")->required();
  replay->add_option("--history", rep_history, "History JSON (default: regenerate from config)");

  Common chk;
  ScenarioFlags chk_flags;
  auto* check = trace->add_subcommand("check", "Verify trace completeness for a strategy");
  add_common(check, chk, "json");
  add_scenario_flags(check, chk_flags);

  // report
  Common rpt;
  std::string rpt_in;
  auto* report = app.add_subcommand("report", "Convert a JSON run report");
  add_common(report, rpt, "json | csv");
  report->add_option("--in", rpt_in, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*simulate) {
      auto cfg = load_config(sim);
      apply(sim_flags, cfg);
      const auto format = regchain::parse_report_format(sim.format);
      const auto result = regchain::run_scenario(cfg);
      if (!sim_trace_out.empty()) {
        regchain::write_file(sim_trace_out, regchain::trace_to_json(result.trace));
      }
      if (!sim_history_out.empty()) {
        regchain::write_file(sim_history_out,
                             regchain::serialize_history(regchain::generate_chain(cfg).scenario));
      }
      emit(sim, regchain::render_report(result, format));
    } else if (*schedule) {
      const auto t = load_transition(sched_t);
      const auto window = window_from(sched_budget);
      const auto sc = regchain::scope(t.candidates, window);

      regchain::ScenarioConfig cfg;
      cfg.strategy = sched_strategy;
      cfg.metric = sched_metric;
      if (sched.seed) cfg.seed = *sched.seed;
      cfg.validate();
      auto strategy = regchain::make_strategy(cfg, t.data.scenario)();
      const regchain::TransitionInput input{*t.prev, *t.next, t.candidates, window,
                                            t.data.scenario.changes_at(t.next->index())};
      const auto s = strategy->plan(input);
      const auto ids = s.ids();
      const auto q = regchain::bind_metric(regchain::parse_metric_kind(sched_metric),
                                           t.context)(ids);
      Json doc{{"build", t.next->index()},
               {"candidates", t.candidates.size()},
               {"budget", budget_json(window)},
               {"scope", {{"count", sc.count},
                          {"witness", sc.witness},
                          {"total_cost", sc.total_cost.to_units()}}},
               {"strategy", strategy->name()},
               {"schedule", ids},
               {"cost", s.total_cost.to_units()},
               {"q_value", optional_json(q)}};
      emit(sched, render_ids(sched, doc, ids));
    } else if (*minimize) {
      const auto t = load_transition(mini_t);
      const auto ids = regchain::rtm_minimize(t.candidates, t.context.coverage,
                                              regchain::parse_engine(mini_engine));
      Json doc{{"build", t.next->index()},
               {"engine", mini_engine},
               {"requirements", t.context.coverage.size()},
               {"tests", ids}};
      emit(mini, render_ids(mini, doc, ids));
    } else if (*select) {
      const auto t = load_transition(sel_t);
      regchain::SelectorOptions opts;
      opts.k = sel_k;
      opts.seed = sel.seed.value_or(1);
      opts.graph = std::make_shared<const regchain::DepGraph>(t.data.scenario.graph());
      opts.changed_classes = t.data.scenario.changes_at(t.next->index());
      const auto ids =
          regchain::rts_select(*t.prev, *t.next, regchain::parse_selector(sel_selector, opts));
      Json doc{{"build", t.next->index()},
               {"selector", sel_selector},
               {"candidates", t.candidates.size()},
               {"tests", ids}};
      emit(sel, render_ids(sel, doc, ids));
    } else if (*prioritize) {
      const auto t = load_transition(prio_t);
      const auto metric =
          regchain::bind_metric(regchain::parse_metric_kind(prio_metric), t.context);
      auto s = regchain::rtp_prioritize(t.candidates, metric, regchain::parse_engine(prio_engine));
      const auto window = window_from(prio_budget);
      s = regchain::schedule_under_budget(s, window);
      const auto ids = s.ids();
      Json doc{{"build", t.next->index()},
               {"metric", prio_metric},
               {"engine", prio_engine},
               {"budget", budget_json(window)},
               {"schedule", ids},
               {"cost", s.total_cost.to_units()},
               {"q_value", optional_json(metric(ids))}};
      emit(prio, render_ids(prio, doc, ids));
    } else if (*regall) {
      const auto t = load_transition(reg_t);
      const auto r = regchain::reg_all(*t.prev, *t.next, regchain::Window::unbounded());
      if (reg.format == "text") {
        emit(reg, std::to_string(r.result) + "\n");
      } else {
        Json doc{{"build", t.next->index()},
                 {"result", r.result},
                 {"vacuous", r.vacuous},
                 {"first_inconsistent",
                  r.first_inconsistent ? Json(*r.first_inconsistent) : Json(nullptr)},
                 {"verdicts", verdicts_json(r.verdicts)}};
        emit(reg, render_ids(reg, doc, {}));
      }
    } else if (*record) {
      auto cfg = load_config(rec);
      apply(rec_flags, cfg);
      const auto gen = regchain::generate_chain(cfg);
      const auto windows = regchain::windows_for(cfg.window, gen.scenario.chain);
      auto strategy = regchain::make_strategy(cfg, gen.scenario)();
      const auto tr = regchain::record_trace(*strategy, gen.scenario, windows,
                                             regchain::parse_metric_kind(cfg.metric));
      emit(rec, regchain::trace_to_json(tr));
    } else if (*replay) {
      const auto tr = regchain::trace_from_json(regchain::read_file(rep_trace));
      regchain::BuildChain chain;
      if (!rep_history.empty()) {
        chain = regchain::ingest_history(rep_history).scenario.chain;
      } else {
        auto cfg = load_config(rep);
        apply(rep_flags, cfg);
        chain = regchain::generate_chain(cfg).scenario.chain;
      }
      const auto steps = regchain::replay_trace(tr, chain);
      Json builds = Json::array();
      for (const auto& s : steps) {
        builds.push_back({{"index", s.index},
                          {"schedule", s.schedule.ids()},
                          {"verdicts", verdicts_json(s.verdicts)}});
      }
      emit(rep, Json{{"strategy", tr.strategy}, {"builds", builds}}.dump(2) + "\n");
    } else if (*check) {
      auto cfg = load_config(chk);
      apply(chk_flags, cfg);
      const auto gen = regchain::generate_chain(cfg);
      const auto windows = regchain::windows_for(cfg.window, gen.scenario.chain);
      const auto result =
          regchain::check_completeness(regchain::make_strategy(cfg, gen.scenario), gen.scenario,
                                       windows, regchain::parse_metric_kind(cfg.metric));
      Json builds = Json::array();
      for (const auto& b : result.builds) {
        builds.push_back({{"index", b.index},
                          {"program", b.program},
                          {"specs", b.specs},
                          {"tests", b.tests},
                          {"budget", b.budget},
                          {"q_value", b.q_value},
                          {"schedule", b.schedule},
                          {"verdicts", b.verdicts}});
      }
      emit(chk, Json{{"strategy", result.strategy},
                     {"verified", result.all_verified()},
                     {"builds", builds}}
                        .dump(2) +
                    "\n");
      if (!result.all_verified()) return 1;
    } else if (*report) {
      const auto r = regchain::report_from_json(regchain::read_file(rpt_in));
      emit(rpt, regchain::render_report(r, regchain::parse_report_format(rpt.format)));
    }
  } catch (const Error& e) {
    std::cerr << "regchain: " << regchain::to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "regchain: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
