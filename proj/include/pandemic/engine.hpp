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

// Rules of the simplified game: setup, actions, role powers, the end-of-turn
// draw and infection phase, epidemics and outbreak chains.
//
// All mutating operations are no-ops once the game is won or lost.

#ifndef PANDEMIC_ENGINE_HPP_
#define PANDEMIC_ENGINE_HPP_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pandemic/state.hpp"

namespace pandemic {

enum class EventKind : std::uint8_t {
  kAction,
  kCardDrawn,
  kEpidemic,
  kInfection,
  kOutbreak,
  kDiscard,
  kTurnEnd,
  kStatus,
};

struct Event {
  EventKind kind = EventKind::kAction;
  std::uint8_t player = 0;
  AtomicAction action;  // kAction only
  CityId city = kNoCity;
  Color color = Color::kBlue;
  int value = 0;  // cubes added, outbreak count, cards drawn, ...
  GameStatus status;

  bool operator==(const Event&) const = default;
};

class EventLog {
 public:
  void push(const Event& e) { events_.push_back(e); }
  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  void clear() { events_.clear(); }

  // One JSON object per line.
  std::string to_jsonl(const WorldMap& map) const;

 private:
  std::vector<Event> events_;
};

// Picks the card a player over the hand limit discards.
using DiscardChooser = std::function<CityId(const GameState&, int player)>;

// Shuffles and deals a fresh setup. Throws Error for a bad role list,
// player count, or epidemic count.
InitialDeal deal_setup(const WorldMap& map, std::span<const Role> roles,
                       int epidemics, Rng& rng);

// Builds the initial state from a deal; `seed` drives the in-game shuffles
// (epidemic reshuffles of the infection discard).
GameState start_game(std::shared_ptr<const WorldMap> map, const InitialDeal& deal,
                     std::uint64_t seed);

// deal_setup + start_game from one seed.
GameState new_game(std::shared_ptr<const WorldMap> map, std::span<const Role> roles,
                   int epidemics, std::uint64_t seed);

// All rule-legal actions of the current player. A cure is listed once per
// color, spending the lowest-numbered qualifying cards.
std::vector<AtomicAction> legal_actions(const GameState& state);
bool is_legal(const GameState& state, const AtomicAction& action);

// Applies one action of the current player. Throws Error if it is illegal.
void apply_action(GameState& state, const AtomicAction& action,
                  EventLog* log = nullptr);

// Draw two player cards, enforce the hand limit, infect, and pass the turn.
// Without a chooser, excess cards are discarded uniformly at random using
// the game's own stream.
void end_turn(GameState& state, const DiscardChooser& choose = {},
              EventLog* log = nullptr);

void resolve_epidemic(GameState& state, EventLog* log = nullptr);
void infect_city(GameState& state, CityId city, Color color,
                 EventLog* log = nullptr);

GameStatus game_status(const GameState& state);

// Checks the rule invariants (cube and card conservation, bounds). Returns
// an empty string if all hold, otherwise a description of the first breach.
std::string check_invariants(const GameState& state);

}  // namespace pandemic

#endif  // PANDEMIC_ENGINE_HPP_
