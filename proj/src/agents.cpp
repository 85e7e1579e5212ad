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

#include "pandemic/agents.hpp"

#include <cmath>

namespace pandemic {

namespace {

MacroAction pick(std::vector<MacroAction>& options, Rng& rng) {
  return options[rng.uniform(options.size())];
}

void pass_rest(GameState& s, EventLog* log = nullptr) {
  while (s.ongoing() && s.actions_left > 0) apply_action(s, AtomicAction::pass(), log);
}

void finish_turn(GameState& s, Rng& rng) {
  if (!s.ongoing()) return;
  pass_rest(s);
  if (s.ongoing()) end_turn(s, discard_chooser(rng));
}

void fill_with_dp(GameState& s, TurnPlan& plan, Rng& rng) {
  while (s.ongoing() && s.actions_left > 0) {
    MacroAction m = dp_choose(s, rng);
    execute_macro(s, m);
    plan.macros.push_back(std::move(m));
  }
}

}  // namespace

int TurnPlan::cost() const {
  int c = 0;
  for (const MacroAction& m : macros) c += m.cost();
  return c;
}

MacroAction dp_choose(const GameState& s, Rng& rng) {
  const int player = s.current_player;
  MacroPlanner planner(s, player, s.actions_left);
  std::vector<MacroAction> options;
  planner.cures(options);
  if (!options.empty()) return pick(options, rng);
  planner.treats(3, options);
  if (!options.empty()) return pick(options, rng);
  planner.shares(true, options);
  if (!options.empty()) return pick(options, rng);
  planner.shares(false, options);
  if (!options.empty()) return pick(options, rng);
  planner.builds(options, 5);
  if (!options.empty()) return pick(options, rng);
  planner.treats(2, options);
  if (!options.empty()) return pick(options, rng);
  planner.treats(1, options);
  if (!options.empty()) return pick(options, rng);
  return planner.walk_away(rng);
}

TurnPlan dp_turn(GameState& s, Rng& rng, EventLog* log) {
  TurnPlan plan;
  plan.player = s.current_player;
  while (s.ongoing() && s.actions_left > 0) {
    MacroAction m = dp_choose(s, rng);
    execute_macro(s, m, log);
    plan.macros.push_back(std::move(m));
  }
  return plan;
}

Genome dp_rollout(const BeliefState& belief, int horizon, std::uint64_t seed) {
  GameState s = determinize(belief, derive_seed({seed, 0x726f6c6cULL}));
  Rng rng(derive_seed({seed, 0x6470ULL}));
  Genome g;
  for (int t = 0; t < horizon && s.ongoing(); ++t) {
    g.turns.push_back(dp_turn(s, rng));
    finish_turn(s, rng);
  }
  return g;
}

std::array<int, 4> shuffled_mutation_tiers(Rng& rng) {
  std::array<int, 4> order = {0, 1, 2, 3};
  rng.shuffle(std::span<int>(order));
  return order;
}

MacroAction mutation_macro(const GameState& s, const std::array<int, 4>& order, Rng& rng) {
  MacroPlanner planner(s, s.current_player, s.actions_left);
  std::vector<MacroAction> options;
  for (int tier : order) {
    switch (tier) {
      case 0:
        planner.cures(options);
        break;
      case 1:
        for (int k = 3; k >= 1 && options.empty(); --k) planner.treats(k, options);
        break;
      case 2:
        planner.shares(true, options);
        if (options.empty()) planner.shares(false, options);
        break;
      case 3:
        planner.builds(options, 5);
        break;
      default:
        throw Error("bad mutation tier");
    }
    if (!options.empty()) return pick(options, rng);
  }
  return dp_choose(s, rng);
}

Genome mutate(const Genome& parent, const BeliefState& belief, int horizon, Rng& rng) {
  GameState s = determinize(belief, rng());
  Rng sim(rng());
  Genome child;
  const int turns = std::max<int>(horizon, static_cast<int>(parent.turns.size()));
  for (int t = 0; t < turns && s.ongoing(); ++t) {
    TurnPlan plan;
    plan.player = s.current_player;
    if (t < static_cast<int>(parent.turns.size()) && !parent.turns[t].macros.empty()) {
      const auto& old = parent.turns[t].macros;
      const auto slot = static_cast<std::size_t>(rng.uniform(old.size()));
      for (std::size_t j = 0; j < slot && s.ongoing() && s.actions_left > 0; ++j) {
        if (!replayable(s, old[j])) break;
        execute_macro(s, old[j]);
        plan.macros.push_back(old[j]);
      }
      if (s.ongoing() && s.actions_left > 0) {
        MacroAction m = mutation_macro(s, shuffled_mutation_tiers(rng), rng);
        execute_macro(s, m);
        plan.macros.push_back(std::move(m));
      }
    }
    fill_with_dp(s, plan, sim);
    child.turns.push_back(std::move(plan));
    finish_turn(s, sim);
  }
  return child;
}

double genome_fitness(const Genome& genome, const BeliefState& belief, const RheaConfig& cfg,
                      std::uint64_t seed) {
  double total = 0.0;
  for (int i = 0; i < cfg.trials; ++i) {
    const auto trial = static_cast<std::uint64_t>(i);
    GameState s = determinize(belief, derive_seed({seed, trial}));
    Rng rng(derive_seed({seed, trial, 0x646973ULL}));
    for (const TurnPlan& plan : genome.turns) {
      if (!s.ongoing()) break;
      for (const MacroAction& m : plan.macros) {
        if (!s.ongoing() || s.actions_left == 0) break;
        execute_macro(s, m);
      }
      finish_turn(s, rng);
    }
    total += evaluate(s, cfg.fitness);
  }
  return cfg.trials > 0 ? total / cfg.trials : 0.0;
}

RheaDecision rhea_decide(const BeliefState& belief, const RheaConfig& cfg, std::uint64_t seed) {
  if (cfg.horizon < 1 || cfg.trials < 1 || cfg.generations < 0) {
    throw Error("RHEA horizon and trials must be at least 1");
  }
  if (!belief.visible.ongoing()) throw Error("rhea_decide on a finished game");
  Rng rng(seed);
  RheaDecision d;
  d.best = dp_rollout(belief, cfg.horizon, rng());
  d.best.fitness = genome_fitness(d.best, belief, cfg, rng());
  d.best.trials_used = cfg.trials;
  d.trace.push_back(d.best.fitness);
  for (int g = 0; g < cfg.generations; ++g) {
    Genome mutant = mutate(d.best, belief, cfg.horizon, rng);
    const std::uint64_t eval_seed = rng();
    mutant.fitness = genome_fitness(mutant, belief, cfg, eval_seed);
    mutant.trials_used = cfg.trials;
    if (cfg.resample_incumbent) {
      d.best.fitness = genome_fitness(d.best, belief, cfg, eval_seed);
      d.best.trials_used += cfg.trials;
    }
    if (mutant.fitness > d.best.fitness) {
      d.best = std::move(mutant);
      ++d.accepted;
    }
    d.trace.push_back(d.best.fitness);
  }
  const TurnPlan& first = d.best.turns.front();
  if (cfg.commit == CommitMode::kFirstMacro) {
    d.commit.push_back(first.macros.front());
  } else {
    d.commit = first.macros;
  }
  return d;
}

std::vector<MacroAction> DefaultPolicyAgent::decide(const BeliefState& belief, Rng& rng) {
  return {dp_choose(belief.visible, rng)};
}

std::vector<MacroAction> RheaAgent::decide(const BeliefState& belief, Rng& rng) {
  last_ = rhea_decide(belief, cfg_, rng());
  return last_.commit;
}

}  // namespace pandemic
