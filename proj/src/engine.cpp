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

#include "pandemic/engine.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace pandemic {

namespace {

constexpr std::array<std::string_view, 11> kActionNames = {
    "DriveFerry",  "DirectFlight", "CharterFlight", "ShuttleFlight",
    "OpsExpertFlight", "TreatDisease", "BuildStation", "ShareGive",
    "ShareTake",   "DiscoverCure", "Pass"};

void record(EventLog* log, const Event& e) {
  if (log != nullptr) log->push(e);
}

void set_lost(GameState& s, LossReason reason, EventLog* log) {
  if (!s.ongoing()) return;
  s.status = Status::kLost;
  s.loss_reason = reason;
  record(log, {.kind = EventKind::kStatus, .player = s.current_player,
               .status = {s.status, s.loss_reason}});
}

void check_eradicated(GameState& s, Color t) {
  if (s.is_cured(t) && s.supply_of(t) == kCubesPerColor) {
    s.eradicated_mask |= static_cast<std::uint8_t>(1u << index(t));
  }
}

// Removes n cubes of color t from city c.
void remove_cubes(GameState& s, CityId c, Color t, int n) {
  s.cubes[c][index(t)] = static_cast<std::uint8_t>(s.cubes[c][index(t)] - n);
  s.supply[index(t)] = static_cast<std::uint8_t>(s.supply[index(t)] + n);
  check_eradicated(s, t);
}

// A Medic standing in a city clears cubes of every cured color there.
void medic_passive(GameState& s) {
  for (int p = 0; p < s.num_players; ++p) {
    const PlayerState& pl = s.players[p];
    if (pl.role != Role::kMedic) continue;
    for (Color t : kAllColors) {
      int n = s.cubes_at(pl.location, t);
      if (n > 0 && s.is_cured(t)) remove_cubes(s, pl.location, t, n);
    }
  }
}

// Adds one cube; returns false (and loses the game) when the supply is empty.
bool place_cube(GameState& s, CityId c, Color t, EventLog* log) {
  if (s.supply_of(t) == 0) {
    set_lost(s, LossReason::kCubesExhausted, log);
    return false;
  }
  s.supply[index(t)]--;
  s.cubes[c][index(t)]++;
  return true;
}

// Resolves an outbreak starting at `origin`, cascading to neighbors. Each
// city outbreaks at most once; cities that already outbroke in this chain
// receive no further cubes.
void outbreak_chain(GameState& s, CityId origin, Color t, EventLog* log) {
  const WorldMap& map = s.world();
  CardSet done;
  CardSet queued = CardSet::of(origin);
  std::array<CityId, kMaxCities> queue{};
  int head = 0;
  int tail = 0;
  queue[tail++] = origin;
  while (head < tail) {
    CityId c = queue[head++];
    done.insert(c);
    s.outbreaks++;
    record(log, {.kind = EventKind::kOutbreak, .city = c, .color = t,
                 .value = s.outbreaks});
    if (s.outbreaks >= kOutbreakLimit) {
      set_lost(s, LossReason::kOutbreakLimit, log);
      return;
    }
    for (CityId nb : map.neighbors(c)) {
      if (done.contains(nb)) continue;
      if (s.cubes_at(nb, t) < kMaxCubesPerCity) {
        if (!place_cube(s, nb, t, log)) return;
        record(log, {.kind = EventKind::kInfection, .city = nb, .color = t, .value = 1});
      } else if (!queued.contains(nb)) {
        queued.insert(nb);
        queue[tail++] = nb;
      }
    }
  }
}

CityId draw_infection_card(GameState& s) {
  if (s.infection.size == 0 && !s.infection.discard.empty()) {
    // Only reachable on maps too small for the epidemic cadence to recycle
    // the discard in time.
    std::array<CityId, kMaxCities> buf{};
    int n = 0;
    for (CityId c : s.infection.discard) buf[n++] = c;
    s.rng.shuffle(std::span<CityId>(buf.data(), n));
    s.infection.discard = CardSet{};
    s.infection.push_section(std::span<const CityId>(buf.data(), n));
  }
  if (s.infection.size == 0) return kNoCity;
  return s.infection.draw_top();
}

}  // namespace

std::string_view to_string(ActionKind k) { return kActionNames[static_cast<int>(k)]; }

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kOngoing: return "ongoing";
    case Status::kWon: return "won";
    case Status::kLost: return "lost";
  }
  return "?";
}

std::string_view to_string(LossReason r) {
  switch (r) {
    case LossReason::kNone: return "none";
    case LossReason::kOutbreakLimit: return "outbreaks";
    case LossReason::kCubesExhausted: return "cubes";
    case LossReason::kDeckExhausted: return "deck";
  }
  return "?";
}

std::string describe(const AtomicAction& a, const WorldMap& map) {
  std::ostringstream out;
  out << to_string(a.kind);
  switch (a.kind) {
    case ActionKind::kDriveFerry:
    case ActionKind::kShuttleFlight:
      out << "(" << map.name(a.city) << ")";
      break;
    case ActionKind::kDirectFlight:
      out << "(" << map.name(a.card) << ")";
      break;
    case ActionKind::kCharterFlight:
    case ActionKind::kOpsExpertFlight:
      out << "(" << map.name(a.city) << ", card " << map.name(a.card) << ")";
      break;
    case ActionKind::kTreatDisease:
      out << "(" << to_string(a.color) << ")";
      break;
    case ActionKind::kShareGive:
    case ActionKind::kShareTake:
      out << "(P" << int(a.player) << ", " << map.name(a.card) << ")";
      break;
    case ActionKind::kDiscoverCure:
      out << "(" << to_string(a.color) << ")";
      break;
    default:
      break;
  }
  return out.str();
}

// --- decks -----------------------------------------------------------------

CityId InfectionDeck::draw_top() {
  CityId c = cards[--size];
  if (--sections.back() == 0) sections.pop_back();
  return c;
}

CityId InfectionDeck::draw_bottom() {
  CityId c = cards[0];
  std::copy(cards.begin() + 1, cards.begin() + size, cards.begin());
  --size;
  if (--sections.front() == 0) {
    std::copy(sections.begin() + 1, sections.end(), sections.begin());
    sections.pop_back();
  }
  return c;
}

void InfectionDeck::push_section(std::span<const CityId> new_cards) {
  if (new_cards.empty()) return;
  for (CityId c : new_cards) cards[size++] = c;
  if (sections.size() == sections.capacity()) {
    // Merge the two bottom sections; never happens with six epidemics.
    sections[1] = static_cast<std::uint8_t>(sections[0] + sections[1]);
    std::copy(sections.begin() + 1, sections.end(), sections.begin());
    sections.pop_back();
  }
  sections.push_back(static_cast<std::uint8_t>(new_cards.size()));
}

std::vector<CardSet> InfectionDeck::sections_top_to_bottom() const {
  std::vector<CardSet> out(sections.size());
  int pos = 0;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    CardSet set;
    for (int j = 0; j < sections[i]; ++j) set.insert(cards[pos++]);
    out[sections.size() - 1 - i] = set;
  }
  return out;
}

CardSet InfectionDeck::deck_cards() const {
  CardSet set;
  for (int i = 0; i < size; ++i) set.insert(cards[i]);
  return set;
}

CardSet PlayerDeck::city_cards() const {
  CardSet set;
  for (int i = 0; i < size; ++i) {
    if (cards[i] != kEpidemicCard) set.insert(cards[i]);
  }
  return set;
}

int PlayerDeck::epidemics_remaining() const {
  return static_cast<int>(std::count(cards.begin(), cards.begin() + size, kEpidemicCard));
}

int GameState::infection_rate() const {
  if (epidemics_drawn <= 3) return 2;
  if (epidemics_drawn <= 5) return 3;
  return 4;
}

// --- event log -------------------------------------------------------------

std::string EventLog::to_jsonl(const WorldMap& map) const {
  std::string out;
  for (const Event& e : events_) {
    nlohmann::ordered_json j;
    switch (e.kind) {
      case EventKind::kAction:
        j["event"] = "action";
        j["player"] = e.player;
        j["kind"] = to_string(e.action.kind);
        j["text"] = describe(e.action, map);
        break;
      case EventKind::kCardDrawn:
        j["event"] = "draw";
        j["player"] = e.player;
        j["card"] = e.city == kEpidemicCard ? std::string("EPIDEMIC") : map.name(e.city);
        break;
      case EventKind::kEpidemic:
        j["event"] = "epidemic";
        j["city"] = map.name(e.city);
        j["epidemics"] = e.value;
        break;
      case EventKind::kInfection:
        j["event"] = "infect";
        j["city"] = map.name(e.city);
        j["color"] = to_string(e.color);
        j["cubes"] = e.value;
        break;
      case EventKind::kOutbreak:
        j["event"] = "outbreak";
        j["city"] = map.name(e.city);
        j["color"] = to_string(e.color);
        j["outbreaks"] = e.value;
        break;
      case EventKind::kDiscard:
        j["event"] = "discard";
        j["player"] = e.player;
        j["card"] = map.name(e.city);
        break;
      case EventKind::kTurnEnd:
        j["event"] = "turn_end";
        j["player"] = e.player;
        j["turn"] = e.value;
        break;
      case EventKind::kStatus:
        j["event"] = "status";
        j["status"] = to_string(e.status.status);
        j["reason"] = to_string(e.status.reason);
        break;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

// --- setup -----------------------------------------------------------------

InitialDeal deal_setup(const WorldMap& map, std::span<const Role> roles,
                       int epidemics, Rng& rng) {
  const int players = static_cast<int>(roles.size());
  if (players < 2 || players > kMaxPlayers) {
    throw Error("player count must be 2-4, got " + std::to_string(players));
  }
  for (int i = 0; i < players; ++i) {
    for (int j = i + 1; j < players; ++j) {
      if (roles[i] == roles[j]) {
        throw Error("duplicate role " + std::string(to_string(roles[i])));
      }
    }
  }
  if (epidemics < 1 || epidemics > kMaxEpidemics) {
    throw Error("epidemic count must be 1-6, got " + std::to_string(epidemics));
  }
  const int n = map.num_cities();
  const int remaining = n - 2 * players;
  if (remaining < epidemics) throw Error("map too small for this setup");

  InitialDeal deal;
  deal.roles.assign(roles.begin(), roles.end());
  deal.epidemics = epidemics;

  std::vector<CityId> city_cards(n);
  for (int c = 0; c < n; ++c) city_cards[c] = static_cast<CityId>(c);
  rng.shuffle(std::span<CityId>(city_cards));
  int pos = 0;
  for (int p = 0; p < players; ++p) {
    deal.hands.push_back({city_cards[pos], city_cards[pos + 1]});
    pos += 2;
  }

  // Split the rest into `epidemics` piles, larger piles on top, one epidemic
  // shuffled into each.
  const int base = remaining / epidemics;
  const int extra = remaining % epidemics;
  for (int e = 0; e < epidemics; ++e) {
    int cities = base + (e < extra ? 1 : 0);
    std::vector<std::uint8_t> pile(city_cards.begin() + pos,
                                   city_cards.begin() + pos + cities);
    pos += cities;
    pile.push_back(kEpidemicCard);
    rng.shuffle(std::span<std::uint8_t>(pile));
    deal.partition_sizes.push_back(cities + 1);
    deal.player_deck.insert(deal.player_deck.end(), pile.begin(), pile.end());
  }

  deal.infection_deck.resize(n);
  for (int c = 0; c < n; ++c) deal.infection_deck[c] = static_cast<CityId>(c);
  rng.shuffle(std::span<CityId>(deal.infection_deck));
  return deal;
}

GameState start_game(std::shared_ptr<const WorldMap> map, const InitialDeal& deal,
                     std::uint64_t seed) {
  const WorldMap& world = *map;
  GameState s;
  s.map = std::move(map);
  s.num_players = static_cast<std::uint8_t>(deal.roles.size());
  if (deal.hands.size() != deal.roles.size()) throw Error("deal has mismatched hands");
  for (int p = 0; p < s.num_players; ++p) {
    s.players[p].role = deal.roles[p];
    s.players[p].location = world.start();
    for (CityId c : deal.hands[p]) s.players[p].hand.insert(c);
  }
  s.supply.fill(kCubesPerColor);
  s.stations.insert(world.start());

  for (int i = static_cast<int>(deal.player_deck.size()) - 1; i >= 0; --i) {
    s.player_deck.cards[s.player_deck.size++] = deal.player_deck[i];
  }
  for (int size : deal.partition_sizes) {
    s.player_deck.partition_sizes.push_back(static_cast<std::uint8_t>(size));
  }

  const int reveals = std::min<int>(kSetupInfectionCubes.size(),
                                    static_cast<int>(deal.infection_deck.size()));
  for (int i = 0; i < reveals; ++i) {
    CityId c = deal.infection_deck[i];
    Color t = world.color(c);
    s.cubes[c][index(t)] = static_cast<std::uint8_t>(kSetupInfectionCubes[i]);
    s.supply[index(t)] = static_cast<std::uint8_t>(s.supply[index(t)] - kSetupInfectionCubes[i]);
    s.infection.discard.insert(c);
  }
  std::vector<CityId> rest;
  for (int i = static_cast<int>(deal.infection_deck.size()) - 1; i >= reveals; --i) {
    rest.push_back(deal.infection_deck[i]);
  }
  s.infection.push_section(rest);
  s.rng = Rng(derive_seed({seed, 0x67616d65ULL}));
  return s;
}

GameState new_game(std::shared_ptr<const WorldMap> map, std::span<const Role> roles,
                   int epidemics, std::uint64_t seed) {
  Rng rng(derive_seed({seed, 0x7365747570ULL}));
  InitialDeal deal = deal_setup(*map, roles, epidemics, rng);
  return start_game(std::move(map), deal, seed);
}

// --- actions ---------------------------------------------------------------

bool is_legal(const GameState& s, const AtomicAction& a) {
  if (!s.ongoing() || s.actions_left == 0) return false;
  const WorldMap& map = s.world();
  const PlayerState& me = s.current();
  const CityId here = me.location;
  const int n = map.num_cities();
  auto valid_city = [n](CityId c) { return c < n; };

  switch (a.kind) {
    case ActionKind::kDriveFerry:
      return valid_city(a.city) && map.adjacent(here, a.city);
    case ActionKind::kDirectFlight:
      return valid_city(a.card) && a.card != here && me.hand.contains(a.card);
    case ActionKind::kCharterFlight:
      return valid_city(a.city) && a.card == here && a.city != here &&
             me.hand.contains(here);
    case ActionKind::kShuttleFlight:
      return valid_city(a.city) && a.city != here && s.stations.contains(here) &&
             s.stations.contains(a.city);
    case ActionKind::kOpsExpertFlight:
      return me.role == Role::kOperationsExpert && !s.ops_flight_used &&
             valid_city(a.city) && valid_city(a.card) && a.city != here &&
             s.stations.contains(here) && me.hand.contains(a.card);
    case ActionKind::kTreatDisease:
      return s.cubes_at(here, a.color) > 0;
    case ActionKind::kBuildStation:
      return !s.stations.contains(here) && s.stations.size() < kMaxStations &&
             (me.role == Role::kOperationsExpert || me.hand.contains(here));
    case ActionKind::kShareGive: {
      if (a.player >= s.num_players || a.player == s.current_player) return false;
      const PlayerState& other = s.players[a.player];
      return other.location == here && valid_city(a.card) && me.hand.contains(a.card) &&
             (a.card == here || me.role == Role::kResearcher);
    }
    case ActionKind::kShareTake: {
      if (a.player >= s.num_players || a.player == s.current_player) return false;
      const PlayerState& other = s.players[a.player];
      return other.location == here && valid_city(a.card) &&
             other.hand.contains(a.card) &&
             (a.card == here || other.role == Role::kResearcher);
    }
    case ActionKind::kDiscoverCure: {
      if (!s.stations.contains(here) || s.is_cured(a.color)) return false;
      if (!a.cards.is_subset_of(me.hand)) return false;
      if (!a.cards.is_subset_of(map.color_set(a.color))) return false;
      return a.cards.size() == cure_cost(me.role);
    }
    case ActionKind::kPass:
      return true;
  }
  return false;
}

std::vector<AtomicAction> legal_actions(const GameState& s) {
  std::vector<AtomicAction> out;
  if (!s.ongoing() || s.actions_left == 0) return out;
  const WorldMap& map = s.world();
  const PlayerState& me = s.current();
  const CityId here = me.location;
  const int n = map.num_cities();

  for (CityId nb : map.neighbors(here)) out.push_back(AtomicAction::drive(nb));
  for (CityId card : me.hand) {
    if (card != here) out.push_back(AtomicAction::direct_flight(card));
  }
  if (me.hand.contains(here)) {
    for (int c = 0; c < n; ++c) {
      if (c != here) out.push_back(AtomicAction::charter_flight(static_cast<CityId>(c), here));
    }
  }
  if (s.stations.contains(here)) {
    for (CityId st : s.stations) {
      if (st != here) out.push_back(AtomicAction::shuttle(st));
    }
    if (me.role == Role::kOperationsExpert && !s.ops_flight_used) {
      for (CityId card : me.hand) {
        for (int c = 0; c < n; ++c) {
          if (c != here) out.push_back(AtomicAction::ops_flight(static_cast<CityId>(c), card));
        }
      }
    }
  }
  for (Color t : kAllColors) {
    if (s.cubes_at(here, t) > 0) out.push_back(AtomicAction::treat(t));
  }
  AtomicAction build = AtomicAction::build();
  if (is_legal(s, build)) out.push_back(build);
  for (int p = 0; p < s.num_players; ++p) {
    if (p == s.current_player || s.players[p].location != here) continue;
    for (CityId card : me.hand) {
      if (card == here || me.role == Role::kResearcher) {
        out.push_back(AtomicAction::give(p, card));
      }
    }
    for (CityId card : s.players[p].hand) {
      if (card == here || s.players[p].role == Role::kResearcher) {
        out.push_back(AtomicAction::take(p, card));
      }
    }
  }
  if (s.stations.contains(here)) {
    const int need = cure_cost(me.role);
    for (Color t : kAllColors) {
      if (s.is_cured(t)) continue;
      CardSet have = me.hand & map.color_set(t);
      if (have.size() < need) continue;
      CardSet pick;
      for (CityId c : have) {
        if (pick.size() == need) break;
        pick.insert(c);
      }
      out.push_back(AtomicAction::cure(t, pick));
    }
  }
  out.push_back(AtomicAction::pass());
  return out;
}

void apply_action(GameState& s, const AtomicAction& a, EventLog* log) {
  if (!s.ongoing()) return;
  if (!is_legal(s, a)) {
    throw Error("illegal action " + describe(a, s.world()) + " for player " +
                std::to_string(s.current_player));
  }
  record(log, {.kind = EventKind::kAction, .player = s.current_player, .action = a});
  PlayerState& me = s.current();
  const CityId here = me.location;
  bool moved = false;

  switch (a.kind) {
    case ActionKind::kDriveFerry:
    case ActionKind::kShuttleFlight:
      me.location = a.city;
      moved = true;
      break;
    case ActionKind::kDirectFlight:
      me.hand.erase(a.card);
      s.player_deck.discard.insert(a.card);
      me.location = a.card;
      moved = true;
      break;
    case ActionKind::kCharterFlight:
      me.hand.erase(a.card);
      s.player_deck.discard.insert(a.card);
      me.location = a.city;
      moved = true;
      break;
    case ActionKind::kOpsExpertFlight:
      me.hand.erase(a.card);
      s.player_deck.discard.insert(a.card);
      me.location = a.city;
      s.ops_flight_used = true;
      moved = true;
      break;
    case ActionKind::kTreatDisease: {
      int n = s.cubes_at(here, a.color);
      bool all = me.role == Role::kMedic || s.is_cured(a.color);
      remove_cubes(s, here, a.color, all ? n : 1);
      break;
    }
    case ActionKind::kBuildStation:
      if (me.role != Role::kOperationsExpert) {
        me.hand.erase(here);
        s.player_deck.discard.insert(here);
      }
      s.stations.insert(here);
      break;
    case ActionKind::kShareGive:
      me.hand.erase(a.card);
      s.players[a.player].hand.insert(a.card);
      break;
    case ActionKind::kShareTake:
      s.players[a.player].hand.erase(a.card);
      me.hand.insert(a.card);
      break;
    case ActionKind::kDiscoverCure:
      me.hand -= a.cards;
      s.player_deck.discard |= a.cards;
      s.cured_mask |= static_cast<std::uint8_t>(1u << index(a.color));
      check_eradicated(s, a.color);
      medic_passive(s);
      if (s.cured_mask == 0x0f) {
        s.status = Status::kWon;
        record(log, {.kind = EventKind::kStatus, .player = s.current_player,
                     .status = {s.status, s.loss_reason}});
      }
      break;
    case ActionKind::kPass:
      break;
  }
  if (moved && me.role == Role::kMedic) medic_passive(s);
  s.actions_left--;
}

// --- end of turn -----------------------------------------------------------

void infect_city(GameState& s, CityId city, Color color, EventLog* log) {
  if (!s.ongoing() || s.is_eradicated(color)) return;
  if (s.cubes_at(city, color) < kMaxCubesPerCity) {
    if (place_cube(s, city, color, log)) {
      record(log, {.kind = EventKind::kInfection, .city = city, .color = color, .value = 1});
    }
    return;
  }
  outbreak_chain(s, city, color, log);
}

void resolve_epidemic(GameState& s, EventLog* log) {
  if (!s.ongoing()) return;
  s.epidemics_drawn++;
  CityId bottom = s.infection.size > 0 ? s.infection.draw_bottom() : kNoCity;
  record(log, {.kind = EventKind::kEpidemic, .player = s.current_player,
               .city = bottom, .value = s.epidemics_drawn});
  if (bottom != kNoCity) {
    s.infection.discard.insert(bottom);
    Color t = s.world().color(bottom);
    if (!s.is_eradicated(t)) {
      const int before = s.cubes_at(bottom, t);
      const int need = kMaxCubesPerCity - before;
      if (s.supply_of(t) < need) {
        set_lost(s, LossReason::kCubesExhausted, log);
        return;
      }
      s.cubes[bottom][index(t)] = kMaxCubesPerCity;
      s.supply[index(t)] = static_cast<std::uint8_t>(s.supply[index(t)] - need);
      if (need > 0) {
        record(log, {.kind = EventKind::kInfection, .city = bottom, .color = t, .value = need});
      }
      if (before > 0) {
        outbreak_chain(s, bottom, t, log);
        if (!s.ongoing()) return;
      }
    }
  }
  // The discard pile (now including the epidemic city) becomes a new,
  // separately shuffled top section.
  std::array<CityId, kMaxCities> buf{};
  int n = 0;
  for (CityId c : s.infection.discard) buf[n++] = c;
  s.rng.shuffle(std::span<CityId>(buf.data(), n));
  s.infection.discard = CardSet{};
  s.infection.push_section(std::span<const CityId>(buf.data(), n));
}

void end_turn(GameState& s, const DiscardChooser& choose, EventLog* log) {
  if (!s.ongoing()) return;
  const int me = s.current_player;

  if (s.player_deck.size < 2) {
    set_lost(s, LossReason::kDeckExhausted, log);
    return;
  }
  for (int i = 0; i < 2; ++i) {
    std::uint8_t card = s.player_deck.draw_top();
    record(log, {.kind = EventKind::kCardDrawn, .player = static_cast<std::uint8_t>(me),
                 .city = card});
    if (card == kEpidemicCard) {
      resolve_epidemic(s, log);
      if (!s.ongoing()) return;
    } else {
      s.players[me].hand.insert(card);
    }
  }

  for (int k = 0; k < s.num_players; ++k) {
    const int p = (me + k) % s.num_players;
    while (s.players[p].hand.size() > kHandLimit) {
      const CardSet hand = s.players[p].hand;
      CityId c;
      if (choose) {
        c = choose(s, p);
        if (!hand.contains(c)) throw Error("discard chooser returned a card not in hand");
      } else {
        int skip = s.rng.uniform_int(hand.size());
        auto it = hand.begin();
        while (skip-- > 0) ++it;
        c = *it;
      }
      s.players[p].hand.erase(c);
      s.player_deck.discard.insert(c);
      record(log, {.kind = EventKind::kDiscard, .player = static_cast<std::uint8_t>(p),
                   .city = c});
    }
  }

  const int rate = s.infection_rate();
  for (int i = 0; i < rate; ++i) {
    CityId c = draw_infection_card(s);
    if (c == kNoCity) break;
    s.infection.discard.insert(c);
    infect_city(s, c, s.world().color(c), log);
    if (!s.ongoing()) return;
  }

  record(log, {.kind = EventKind::kTurnEnd, .player = static_cast<std::uint8_t>(me),
               .value = s.turn_count});
  s.current_player = static_cast<std::uint8_t>((me + 1) % s.num_players);
  s.actions_left = kActionsPerTurn;
  s.ops_flight_used = false;
  s.turn_count++;
}

GameStatus game_status(const GameState& s) { return {s.status, s.loss_reason}; }

std::string check_invariants(const GameState& s) {
  const WorldMap& map = s.world();
  const int n = map.num_cities();
  for (Color t : kAllColors) {
    int on_board = 0;
    for (int c = 0; c < n; ++c) {
      int k = s.cubes[c][index(t)];
      if (k > kMaxCubesPerCity) return "more than 3 cubes on " + map.name(c);
      on_board += k;
    }
    if (on_board + s.supply_of(t) != kCubesPerColor) {
      return "cube conservation broken for " + std::string(to_string(t));
    }
    if (s.is_eradicated(t) && (!s.is_cured(t) || s.supply_of(t) != kCubesPerColor)) {
      return "eradicated color " + std::string(to_string(t)) + " has cubes or no cure";
    }
  }
  if (s.outbreaks > kOutbreakLimit) return "outbreak count above limit";
  if (s.outbreaks == kOutbreakLimit && s.status != Status::kLost) {
    return "outbreak limit reached without loss";
  }

  CardSet infection_deck = s.infection.deck_cards();
  if (infection_deck.size() != s.infection.size) return "duplicate infection card in deck";
  if (!(infection_deck & s.infection.discard).empty()) return "infection card in deck and discard";
  if ((infection_deck | s.infection.discard) != map.all_cities()) return "infection cards lost";
  int section_total = 0;
  for (int k : s.infection.sections) {
    if (k == 0) return "empty infection section";
    section_total += k;
  }
  if (section_total != s.infection.size) return "infection sections do not cover the deck";

  CardSet seen = s.player_deck.discard;
  for (int i = 0; i < s.player_deck.size; ++i) {
    std::uint8_t c = s.player_deck.cards[i];
    if (c == kEpidemicCard) continue;
    if (seen.contains(c)) return "player card duplicated: " + map.name(c);
    seen.insert(c);
  }
  for (int p = 0; p < s.num_players; ++p) {
    if (!(seen & s.players[p].hand).empty()) return "player card duplicated in a hand";
    seen |= s.players[p].hand;
  }
  if (seen != map.all_cities()) return "player cards lost";
  if (s.player_deck.epidemics_remaining() + s.epidemics_drawn !=
      static_cast<int>(s.player_deck.partition_sizes.size())) {
    return "epidemic count inconsistent";
  }
  if (s.stations.size() > kMaxStations) return "too many research stations";
  if (s.status == Status::kWon && s.cured_mask != 0x0f) return "won without four cures";
  return {};
}

}  // namespace pandemic
