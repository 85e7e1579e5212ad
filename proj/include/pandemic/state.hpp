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

#ifndef PANDEMIC_STATE_HPP_
#define PANDEMIC_STATE_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pandemic/common.hpp"
#include "pandemic/rng.hpp"
#include "pandemic/world.hpp"

namespace pandemic {

inline constexpr std::uint8_t kEpidemicCard = 0xfe;
inline constexpr int kMaxPlayerDeck = kMaxCities + kMaxEpidemics;
inline constexpr int kMaxInfectionSections = 16;

enum class ActionKind : std::uint8_t {
  kDriveFerry,
  kDirectFlight,
  kCharterFlight,
  kShuttleFlight,
  kOpsExpertFlight,
  kTreatDisease,
  kBuildStation,
  kShareGive,
  kShareTake,
  kDiscoverCure,
  kPass,
};

std::string_view to_string(ActionKind k);

constexpr bool is_move(ActionKind k) {
  return k == ActionKind::kDriveFerry || k == ActionKind::kDirectFlight ||
         k == ActionKind::kCharterFlight || k == ActionKind::kShuttleFlight ||
         k == ActionKind::kOpsExpertFlight;
}

// One of the four actions a player spends per turn.
struct AtomicAction {
  ActionKind kind = ActionKind::kPass;
  CityId city = kNoCity;     // destination of a move
  CityId card = kNoCity;     // card discarded for a flight, or traded
  std::uint8_t player = 0;   // share counterpart
  Color color = Color::kBlue;
  CardSet cards;             // cards discarded for a cure

  static AtomicAction drive(CityId to) { return {ActionKind::kDriveFerry, to}; }
  static AtomicAction direct_flight(CityId card) {
    return {ActionKind::kDirectFlight, card, card};
  }
  static AtomicAction charter_flight(CityId to, CityId card) {
    return {ActionKind::kCharterFlight, to, card};
  }
  static AtomicAction shuttle(CityId to) { return {ActionKind::kShuttleFlight, to}; }
  static AtomicAction ops_flight(CityId to, CityId card) {
    return {ActionKind::kOpsExpertFlight, to, card};
  }
  static AtomicAction treat(Color c) {
    return {ActionKind::kTreatDisease, kNoCity, kNoCity, 0, c};
  }
  static AtomicAction build() { return {ActionKind::kBuildStation}; }
  static AtomicAction give(int to_player, CityId card) {
    return {ActionKind::kShareGive, kNoCity, card, static_cast<std::uint8_t>(to_player)};
  }
  static AtomicAction take(int from_player, CityId card) {
    return {ActionKind::kShareTake, kNoCity, card, static_cast<std::uint8_t>(from_player)};
  }
  static AtomicAction cure(Color c, CardSet cards) {
    return {ActionKind::kDiscoverCure, kNoCity, kNoCity, 0, c, cards};
  }
  static AtomicAction pass() { return {}; }

  bool operator==(const AtomicAction&) const = default;
};

std::string describe(const AtomicAction& a, const WorldMap& map);

enum class Status : std::uint8_t { kOngoing, kWon, kLost };
enum class LossReason : std::uint8_t {
  kNone,
  kOutbreakLimit,
  kCubesExhausted,
  kDeckExhausted,
};

std::string_view to_string(Status s);
std::string_view to_string(LossReason r);

struct GameStatus {
  Status status = Status::kOngoing;
  LossReason reason = LossReason::kNone;
  bool operator==(const GameStatus&) const = default;
};

struct PlayerState {
  Role role = Role::kOperationsExpert;
  CityId location = 0;
  CardSet hand;
  bool operator==(const PlayerState&) const = default;
};

// The infection deck is a concrete stack split into sections. A section is a
// run of cards shuffled together (the initial deck, or a discard pile put
// back by an epidemic); players know which cards are in which section but
// not their order within it.
struct InfectionDeck {
  std::array<CityId, kMaxCities> cards{};  // index 0 is the bottom
  std::uint8_t size = 0;
  StaticVector<std::uint8_t, kMaxInfectionSections> sections;  // bottom to top
  CardSet discard;

  CityId draw_top();
  CityId draw_bottom();
  // Pushes already-shuffled cards as a new top section; the last card ends
  // on top.
  void push_section(std::span<const CityId> new_cards);
  // Section contents, top section first.
  std::vector<CardSet> sections_top_to_bottom() const;
  CardSet deck_cards() const;

  bool operator==(const InfectionDeck&) const = default;
};

// The player deck is a concrete stack that was assembled from equal-size
// partitions, each holding one epidemic card.
struct PlayerDeck {
  std::array<std::uint8_t, kMaxPlayerDeck> cards{};  // index 0 is the bottom
  std::uint8_t size = 0;
  StaticVector<std::uint8_t, kMaxEpidemics> partition_sizes;  // initial, top first
  CardSet discard;

  std::uint8_t draw_top() { return cards[--size]; }
  CardSet city_cards() const;
  int epidemics_remaining() const;

  bool operator==(const PlayerDeck&) const = default;
};

struct GameState {
  std::shared_ptr<const WorldMap> map;
  std::array<PlayerState, kMaxPlayers> players{};
  std::uint8_t num_players = 0;
  std::uint8_t current_player = 0;
  std::uint8_t actions_left = kActionsPerTurn;
  bool ops_flight_used = false;
  std::uint16_t turn_count = 1;  // player turns started so far

  std::array<std::array<std::uint8_t, kNumColors>, kMaxCities> cubes{};
  std::array<std::uint8_t, kNumColors> supply{};
  CardSet stations;
  std::uint8_t cured_mask = 0;
  std::uint8_t eradicated_mask = 0;
  std::uint8_t epidemics_drawn = 0;
  std::uint8_t outbreaks = 0;

  InfectionDeck infection;
  PlayerDeck player_deck;

  Status status = Status::kOngoing;
  LossReason loss_reason = LossReason::kNone;
  Rng rng;

  const WorldMap& world() const { return *map; }
  PlayerState& player(int i) { return players[i]; }
  const PlayerState& player(int i) const { return players[i]; }
  PlayerState& current() { return players[current_player]; }
  const PlayerState& current() const { return players[current_player]; }

  int cubes_at(CityId c, Color t) const { return cubes[c][index(t)]; }
  int supply_of(Color t) const { return supply[index(t)]; }
  bool is_cured(Color t) const { return (cured_mask >> index(t)) & 1; }
  bool is_eradicated(Color t) const { return (eradicated_mask >> index(t)) & 1; }
  int num_cured() const { return std::popcount(cured_mask); }
  bool ongoing() const { return status == Status::kOngoing; }
  int infection_rate() const;

  bool operator==(const GameState&) const = default;
};

// Everything fixed at setup time: roles, hands, and both deck orders.
struct InitialDeal {
  std::vector<Role> roles;
  int epidemics = 4;
  std::vector<std::vector<CityId>> hands;
  std::vector<std::uint8_t> player_deck;        // top first; kEpidemicCard marks epidemics
  std::vector<int> partition_sizes;             // top first, epidemics included
  std::vector<CityId> infection_deck;           // top first; the first reveals are the infected cities

  bool operator==(const InitialDeal&) const = default;
};

// Number of infection cards revealed at setup, and the cubes each receives.
inline constexpr std::array<int, 9> kSetupInfectionCubes = {3, 3, 3, 2, 2, 2, 1, 1, 1};

}  // namespace pandemic

#endif  // PANDEMIC_STATE_HPP_
