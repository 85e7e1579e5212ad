// Copyright 2026 The Pandemic RHEA Authors.
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

// Command line front end:
//
//   pandemic profile --count 1000 --runs 30 --out setups.json
//   pandemic select  --setups setups.json --k 10 --out testbeds.json
//   pandemic play    --setups testbeds.json --index 0 --agent rhea --out game.jsonl
//   pandemic bench   --setups testbeds.json --agent dp,rhea --runs 30 --out results.csv

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pandemic/harness.hpp"

namespace {

using namespace pandemic;

struct Common {
  std::string map_file;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  std::shared_ptr<const WorldMap> map() const {
    return map_file.empty() ? standard_map() : load_map_file(map_file);
  }
};

struct AgentOptions {
  std::vector<std::string> agents = {"dp"};
  std::vector<std::string> fitness = {"p:avg(f_oa,f_cm)"};
  int generations = 100;
  int trials = 5;
  int horizon = 5;
  std::string commit = "first";
  bool foa_clamp = false;

  void add(CLI::App* app, bool many) {
    if (many) {
      app->add_option("--agent", agents, "Agents to run (dp, rhea)")->delimiter(',');
      app->add_option("--fitness", fitness, "Fitness specs for rhea, e.g. p:avg(f_oa,f_cm)")
          ->delimiter(';');
    } else {
      app->add_option("--agent", agents, "Agent (dp or rhea)")->expected(1);
      app->add_option("--fitness", fitness, "Fitness spec for rhea")->expected(1);
    }
    app->add_option("--generations", generations, "RHEA generations")->check(CLI::NonNegativeNumber);
    app->add_option("--trials", trials, "Determinizations per fitness evaluation")
        ->check(CLI::PositiveNumber);
    app->add_option("--horizon", horizon, "Planning horizon in player turns")
        ->check(CLI::PositiveNumber);
    app->add_option("--commit", commit, "Commit the first macro or the whole turn")
        ->check(CLI::IsMember({"first", "turn"}));
    app->add_flag("--foa-clamp", foa_clamp, "Use the clamped cure-progress fitness");
  }

  RheaConfig config(const std::string& fitness_text) const {
    RheaConfig cfg;
    cfg.generations = generations;
    cfg.trials = trials;
    cfg.horizon = horizon;
    cfg.commit = commit == "turn" ? CommitMode::kWholeTurn : CommitMode::kFirstMacro;
    cfg.fitness = parse_fitness(fitness_text);
    cfg.fitness.clamp_oa = foa_clamp;
    return cfg;
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

int cmd_profile(const Common& common, int count, int runs, int epidemics,
                const std::vector<std::string>& role_names, const std::string& out) {
  ProfileConfig cfg;
  cfg.setups = count;
  cfg.runs = runs;
  cfg.epidemics = epidemics;
  cfg.master_seed = common.seed;
  cfg.threads = common.threads;
  if (!role_names.empty()) {
    cfg.roles.clear();
    for (const auto& r : role_names) cfg.roles.push_back(parse_role(r));
  }
  auto map = common.map();
  const auto t0 = std::chrono::steady_clock::now();
  auto records = generate_and_profile(map, cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double wins = 0.0;
  for (const auto& r : records) wins += r.profile->win_ratio();
  std::fprintf(stderr, "profiled %d setups x %d runs in %.1f s, mean win ratio %.4f\n", count,
               runs, secs, wins / records.size());
  write_output(out, setups_to_json(records, *map));
  return 0;
}

int cmd_select(const Common& common, const std::string& setups, const SelectConfig& cfg,
               const std::string& out) {
  auto map = common.map();
  auto records = read_setups(setups, *map);
  const auto pool = candidate_pool(records, cfg);
  auto chosen = select_testbeds(records, cfg);
  std::fprintf(stderr, "candidate pool %zu, selected %zu\n", pool.size(), chosen.size());
  for (const auto& r : chosen) {
    std::fprintf(stderr, "  seed %llu win %.3f duration %.3f\n",
                 static_cast<unsigned long long>(r.seed), r.profile->win_ratio(),
                 r.profile->normalized_duration());
  }
  write_output(out, setups_to_json(chosen, *map));
  return 0;
}

int cmd_play(const Common& common, const std::string& setups, std::size_t idx,
             const AgentOptions& opts, int epidemics, const std::string& out) {
  auto map = common.map();
  SetupRecord setup;
  if (setups.empty()) {
    setup = make_setup(*map, kDefaultRoleOrder, epidemics, common.seed);
  } else {
    auto records = read_setups(setups, *map);
    if (idx >= records.size()) throw Error("setup index out of range");
    setup = records[idx];
  }
  std::unique_ptr<Agent> agent;
  if (opts.agents.front() == "dp") {
    agent = std::make_unique<DefaultPolicyAgent>();
  } else if (opts.agents.front() == "rhea") {
    agent = std::make_unique<RheaAgent>(opts.config(opts.fitness.front()));
  } else {
    throw Error("unknown agent '" + opts.agents.front() + "'");
  }
  EventLog log;
  const std::uint64_t run_seed = derive_seed({common.seed, setup.seed});
  RunMetrics m = play_game(initial_state(map, setup, run_seed), *agent,
                           derive_seed({run_seed, 0x6167656e74ULL}), &log);
  write_output(out, log.to_jsonl(*map));
  std::fprintf(stderr, "%s after %d turns (%s), %d outbreaks, %d epidemics\n",
               m.won ? "won" : "lost", m.duration, std::string(to_string(m.loss_reason)).c_str(),
               m.outbreaks, m.epidemics);
  return 0;
}

int cmd_bench(const Common& common, const std::string& setups, const AgentOptions& opts,
              ExperimentGrid grid, const std::vector<int>& p_rand, const std::vector<int>& d_rand,
              const std::string& format, const std::string& out) {
  auto map = common.map();
  grid.setups = read_setups(setups, *map);
  grid.agents = opts.agents;
  grid.fitness.clear();
  for (const auto& f : opts.fitness) grid.fitness.push_back(opts.config(f).fitness);
  grid.rhea = opts.config(opts.fitness.front());
  grid.p_rand.assign(p_rand.begin(), p_rand.end());
  grid.d_rand.assign(d_rand.begin(), d_rand.end());
  grid.master_seed = common.seed;
  grid.threads = common.threads;
  const auto t0 = std::chrono::steady_clock::now();
  auto result = run_experiment(map, grid);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "%zu rows in %.1f s\n", result.rows.size(), secs);
  write_output(out, format == "json" ? results_to_json(result.rows)
                                     : results_to_csv(result.rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pandemic simulator, agents and experiment harness"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--map", common.map_file, "Map document (default: standard board)");
  app.add_option("--seed", common.seed, "Master seed");
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");

  auto* profile = app.add_subcommand("profile", "Generate setups and profile them with DP");
  int count = 1000;
  int runs = 30;
  int epidemics = 4;
  std::vector<std::string> roles;
  std::string out;
  profile->add_option("--count", count, "Number of setups")->check(CLI::PositiveNumber);
  profile->add_option("--runs", runs, "Runs per setup")->check(CLI::PositiveNumber);
  profile->add_option("--epidemics", epidemics, "Epidemic cards")->check(CLI::Range(4, 6));
  profile->add_option("--roles", roles, "Role order")->delimiter(',');
  profile->add_option("--out", out, "Setup file to write (default: stdout)");

  auto* select = app.add_subcommand("select", "Pick testbed setups by k-medoids");
  std::string setups;
  SelectConfig sel;
  select->add_option("--setups", setups, "Profiled setup file")->required();
  select->add_option("--k", sel.k, "Number of medoids");
  select->add_option("--top", sel.top_fraction, "Fraction of setups kept by win ratio");
  select->add_option("--min-win", sel.min_win_ratio, "Minimum win ratio");
  select->add_option("--out", out, "Setup file to write (default: stdout)");

  auto* play = app.add_subcommand("play", "Play one game and print its event log");
  std::size_t idx = 0;
  AgentOptions play_opts;
  play->add_option("--setups", setups, "Setup file (default: a fresh setup from --seed)");
  play->add_option("--index", idx, "Setup index in the file");
  play->add_option("--epidemics", epidemics, "Epidemic cards for a fresh setup")
      ->check(CLI::Range(4, 6));
  play_opts.add(play, false);
  play->add_option("--out", out, "Event log file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Run an experiment grid");
  AgentOptions bench_opts;
  bench_opts.agents = {"dp", "rhea"};
  ExperimentGrid grid;
  std::vector<int> p_rand = {0};
  std::vector<int> d_rand = {0};
  std::string format = "csv";
  bench->add_option("--setups", setups, "Testbed setup file")->required();
  bench_opts.add(bench, true);
  bench->add_option("--runs", grid.runs, "Runs per cell")->check(CLI::PositiveNumber);
  bench->add_option("--players", grid.players, "Player counts")
      ->delimiter(',')
      ->check(CLI::Range(2, 4));
  bench->add_option("--epidemics", grid.epidemics, "Epidemic counts")
      ->delimiter(',')
      ->check(CLI::Range(4, 6));
  bench->add_option("--p-rand", p_rand, "Role order randomization (0,1)")
      ->delimiter(',')
      ->check(CLI::Range(0, 1));
  bench->add_option("--d-rand", d_rand, "Hidden deck reshuffle (0,1)")
      ->delimiter(',')
      ->check(CLI::Range(0, 1));
  bench->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", out, "Results file (default: stdout)");

  CLI11_PARSE(app, argc, argv);
  sel.seed = common.seed;
  try {
    if (*profile) return cmd_profile(common, count, runs, epidemics, roles, out);
    if (*select) return cmd_select(common, setups, sel, out);
    if (*play) return cmd_play(common, setups, idx, play_opts, epidemics, out);
    if (*bench) return cmd_bench(common, setups, bench_opts, grid, p_rand, d_rand, format, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
