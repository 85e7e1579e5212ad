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

// The scripted default policy and the rolling horizon evolutionary agent.
//
// The default policy picks a uniformly random macro from the first
// non-empty tier:
//
//   1. cure
//   2. treat a city with 3 cubes of one color
//   3. share knowledge now, otherwise move and wait for the counterpart
//   4. build a station (while fewer than 5 exist)
//   5. treat a city with 2 cubes
//   6. treat a city with 1 cube
//   7. walk away
//
// The evolutionary agent plans H player turns of macros. It starts from a
// default-policy rollout and runs a 1+1 loop: each generation mutates one
// macro in every turn, repairs the rest of that turn with the default
// policy, and keeps the mutant only if its trial-averaged fitness is
// strictly higher.

#ifndef PANDEMIC_AGENTS_HPP_
#define PANDEMIC_AGENTS_HPP_

#include <array>
#include <memory>
#include <limits>
#include <string>
#include <vector>

#include "pandemic/belief.hpp"
#include "pandemic/eval.hpp"
#include "pandemic/macros.hpp"

namespace pandemic {

struct TurnPlan {
  std::uint8_t player = 0;
  std::vector<MacroAction> macros;

  int cost() const;
  bool operator==(const TurnPlan&) const = default;
};

struct Genome {
  std::vector<TurnPlan> turns;
  double fitness = std::numeric_limits<double>::quiet_NaN();
  int trials_used = 0;
};

enum class CommitMode : std::uint8_t { kFirstMacro, kWholeTurn };

struct RheaConfig {
  int horizon = 5;
  int generations = 100;
  int trials = 5;
  FitnessSpec fitness = parse_fitness("p:avg(f_oa,f_cm)");
  CommitMode commit = CommitMode::kFirstMacro;
  // Re-score the incumbent alongside every mutant instead of keeping the
  // fitness it was accepted with.
  bool resample_incumbent = false;
};

// Next default-policy macro for the current player.
MacroAction dp_choose(const GameState& state, Rng& rng);

// Plays the current player's remaining actions with the default policy and
// returns the macros used. Does not end the turn.
TurnPlan dp_turn(GameState& state, Rng& rng, EventLog* log = nullptr);

// Determinizes once and records H default-policy turns. Stops early if the
// game ends.
Genome dp_rollout(const BeliefState& belief, int horizon, std::uint64_t seed);

// Mutation tier order: 0 cure, 1 treat (3, then 2, then 1 cubes), 2 share,
// 3 build.
std::array<int, 4> shuffled_mutation_tiers(Rng& rng);

// Macro drawn from the first non-empty tier in `order`, or the default
// policy's choice if every tier is empty.
MacroAction mutation_macro(const GameState& state, const std::array<int, 4>& order, Rng& rng);

Genome mutate(const Genome& parent, const BeliefState& belief, int horizon, Rng& rng);

// Mean evaluation over `cfg.trials` fresh determinizations. Each turn plays
// the plan's macros (wasting steps that are no longer legal), passes any
// leftover actions, and ends the turn.
double genome_fitness(const Genome& genome, const BeliefState& belief, const RheaConfig& cfg,
                      std::uint64_t seed);

struct RheaDecision {
  std::vector<MacroAction> commit;
  Genome best;
  std::vector<double> trace;  // incumbent fitness after each generation, seed first
  int accepted = 0;
};

RheaDecision rhea_decide(const BeliefState& belief, const RheaConfig& cfg, std::uint64_t seed);

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  // Macros to play next, in order, for the current player.
  virtual std::vector<MacroAction> decide(const BeliefState& belief, Rng& rng) = 0;
};

class DefaultPolicyAgent final : public Agent {
 public:
  std::string name() const override { return "dp"; }
  std::vector<MacroAction> decide(const BeliefState& belief, Rng& rng) override;
};

class RheaAgent final : public Agent {
 public:
  explicit RheaAgent(RheaConfig cfg) : cfg_(cfg) {}
  std::string name() const override { return "rhea"; }
  std::vector<MacroAction> decide(const BeliefState& belief, Rng& rng) override;

  const RheaConfig& config() const { return cfg_; }
  const RheaDecision& last_decision() const { return last_; }

 private:
  RheaConfig cfg_;
  RheaDecision last_;
};

}  // namespace pandemic

#endif  // PANDEMIC_AGENTS_HPP_
