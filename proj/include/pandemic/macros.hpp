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

// Macro-actions: movement along a shortest action sequence followed by one
// payoff action (treat, cure, build, share), plus the random walk fallback.
//
// Movement may spend a card only if doing so leaves the team's ability to
// cure every disease unchanged. That ability is
//
//   A(t)      = 1 if t is cured, else max over players p of A_c(p, t)
//   A_c(p, t) = min(1, h(p, t) / C_d(p))
//
// with h(p, t) the cards of color t in p's hand and C_d(p) the role's cure
// cost.

#ifndef PANDEMIC_MACROS_HPP_
#define PANDEMIC_MACROS_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pandemic/engine.hpp"
#include "pandemic/state.hpp"

namespace pandemic {

enum class MacroKind : std::uint8_t {
  kTreat,
  kCure,
  kBuild,
  kShareGive,
  kShareTake,
  kWalkAway,
};

std::string_view to_string(MacroKind k);

using StepList = StaticVector<AtomicAction, kActionsPerTurn>;

struct MacroAction {
  MacroKind kind = MacroKind::kWalkAway;
  std::uint8_t player = 0;
  CityId city = kNoCity;        // target city
  Color color = Color::kBlue;   // treat / cure color
  CityId card = kNoCity;        // traded card
  std::uint8_t other = 0xff;    // share counterpart
  bool waits = false;           // share macro that moves and passes
  StepList steps;

  int cost() const { return static_cast<int>(steps.size()); }
  bool operator==(const MacroAction&) const = default;
};

std::string describe(const MacroAction& m, const WorldMap& map);

struct CureAbility {
  std::array<double, kNumColors> team{};                          // A(t)
  std::array<std::array<double, kNumColors>, kMaxPlayers> player{};  // A_c(p, t)

  double operator[](Color t) const { return team[index(t)]; }
  double total() const { return team[0] + team[1] + team[2] + team[3]; }
};

CureAbility cure_ability(std::span<const CardSet> hands, std::span<const Role> roles,
                         std::uint8_t cured_mask, const WorldMap& map);
CureAbility cure_ability(const GameState& state);

// True if discarding `card` from `player`'s hand leaves A(color(card))
// unchanged (always true for cured colors).
bool spend_eligible(const GameState& state, int player, CityId card);

// For each color, how many of the player's cards of that color can be spent
// together without lowering A(t). Cured colors report the full count.
std::array<int, kNumColors> spend_slack(const GameState& state, int player);

// Shortest routes for one player within an action budget. Card-spending
// flights are limited to eligible card sets.
class ReachTable {
 public:
  static constexpr int kUnreachable = -1;

  // Minimum action count to be in `city`, or kUnreachable.
  int cost(CityId city) const;
  // Cards discarded along the witness route.
  CardSet spent(CityId city) const;
  // Witness route. Among equal-cost routes, fewer spent cards win.
  StepList route(CityId city) const;

  int budget() const { return budget_; }

 private:
  friend ReachTable reach(const GameState&, int, int, CardSet);

  struct Node {
    CityId city;
    std::uint8_t level;
    std::int16_t parent;
    std::int16_t next_same_city;
    CardSet spent;
    AtomicAction via;
  };

  bool universal_wins(CityId city) const;

  std::vector<Node> nodes_;
  std::array<std::int16_t, kMaxCities> best_{};
  std::array<std::int16_t, kMaxCities> head_{};
  // A charter or Operations Expert flight reaches every city at this level.
  int universal_cost_ = kUnreachable;
  std::int16_t universal_parent_ = -1;
  AtomicAction universal_via_;
  CardSet universal_spent_;
  int budget_ = 0;
};

// Breadth-first search over (city, spent card set). Cards in `reserved` are
// never spent.
ReachTable reach(const GameState& state, int player, int budget,
                 CardSet reserved = CardSet{});

// Which macro families to enumerate.
struct MacroFilter {
  bool cure = false;
  std::array<bool, 4> treat{};  // index = cube count (1..3) at the target
  bool share_now = false;       // trades completed this turn
  bool share_wait = false;      // move to the meeting city and pass
  bool build = false;
  bool walk_away = false;
  int station_cap = 5;          // build only while fewer stations exist

  static MacroFilter all();
};

// Enumerates macros for one player from the current state. Caches routes so
// that several families can be queried for one state.
class MacroPlanner {
 public:
  MacroPlanner(const GameState& state, int player, int actions_left);

  void cures(std::vector<MacroAction>& out);
  void treats(int cube_count, std::vector<MacroAction>& out);
  void shares(bool immediate, std::vector<MacroAction>& out);
  void builds(std::vector<MacroAction>& out, int station_cap = 5);
  MacroAction walk_away(Rng& rng) const;

  const ReachTable& routes();
  const ReachTable& routes_reserving(CardSet reserved);

 private:
  // Route to `city` that leaves `keep` in hand, or nullopt if none fits
  // within `max_cost`.
  std::optional<StepList> route_keeping(CityId city, CardSet keep, int max_cost);
  void share_macro(MacroKind kind, int other, CityId card, CityId meet,
                   std::vector<MacroAction>& out, bool immediate);

  const GameState& state_;
  int player_;
  int actions_left_;
  std::vector<std::pair<CardSet, ReachTable>> tables_;
  CureAbility ability_;
};

std::vector<MacroAction> enumerate_macros(const GameState& state, int player,
                                          int actions_left, const MacroFilter& filter,
                                          Rng& rng);

// Applies each step that is still legal; illegal steps become Pass. Returns
// the number of wasted (replaced) steps. Stops early if the game ends or the
// player runs out of actions.
int execute_macro(GameState& state, const MacroAction& macro, EventLog* log = nullptr);

// True if every step of the macro is legal in sequence from `state`.
bool replayable(const GameState& state, const MacroAction& macro);

// Card to drop when over the hand limit: the one whose loss lowers sum A(t)
// least (zero for eligible cards), ties broken uniformly.
CityId choose_discard(const GameState& state, int player, Rng& rng);

// DiscardChooser bound to choose_discard and an external stream.
DiscardChooser discard_chooser(Rng& rng);

}  // namespace pandemic

#endif  // PANDEMIC_MACROS_HPP_
