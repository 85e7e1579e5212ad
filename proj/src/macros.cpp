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

#include "pandemic/macros.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pandemic {

namespace {

double individual_ability(int cards, Role role) {
  const int need = cure_cost(role);
  return cards >= need ? 1.0 : static_cast<double>(cards) / need;
}

int count_color(CardSet hand, const WorldMap& map, Color t) {
  return (hand & map.color_set(t)).size();
}

// A(t) after moving `card` from player `from` to player `to` (either may be
// -1 for "nowhere").
double ability_after_move(const GameState& s, Color t, CityId card, int from, int to) {
  if (s.is_cured(t)) return 1.0;
  const WorldMap& map = s.world();
  double best = 0.0;
  for (int p = 0; p < s.num_players; ++p) {
    int h = count_color(s.players[p].hand, map, t);
    if (p == from && s.players[p].hand.contains(card)) --h;
    if (p == to) ++h;
    best = std::max(best, individual_ability(h, s.players[p].role));
  }
  return best;
}

}  // namespace

std::string_view to_string(MacroKind k) {
  switch (k) {
    case MacroKind::kTreat: return "Treat";
    case MacroKind::kCure: return "Cure";
    case MacroKind::kBuild: return "Build";
    case MacroKind::kShareGive: return "ShareGive";
    case MacroKind::kShareTake: return "ShareTake";
    case MacroKind::kWalkAway: return "WalkAway";
  }
  return "?";
}

std::string describe(const MacroAction& m, const WorldMap& map) {
  std::ostringstream out;
  out << to_string(m.kind);
  if (m.kind != MacroKind::kWalkAway && m.city != kNoCity) out << "(" << map.name(m.city);
  switch (m.kind) {
    case MacroKind::kTreat:
    case MacroKind::kCure:
      out << ", " << to_string(m.color) << ")";
      break;
    case MacroKind::kShareGive:
    case MacroKind::kShareTake:
      out << ", " << map.name(m.card) << ", P" << int(m.other) << (m.waits ? ", wait" : "")
          << ")";
      break;
    case MacroKind::kBuild:
      out << ")";
      break;
    case MacroKind::kWalkAway:
      break;
  }
  out << " [";
  for (std::size_t i = 0; i < m.steps.size(); ++i) {
    if (i > 0) out << ", ";
    out << describe(m.steps[i], map);
  }
  out << "]";
  return out.str();
}

// --- cure ability ----------------------------------------------------------

CureAbility cure_ability(std::span<const CardSet> hands, std::span<const Role> roles,
                         std::uint8_t cured_mask, const WorldMap& map) {
  CureAbility a;
  for (Color t : kAllColors) {
    double best = 0.0;
    for (std::size_t p = 0; p < hands.size(); ++p) {
      double v = individual_ability(count_color(hands[p], map, t), roles[p]);
      a.player[p][index(t)] = v;
      best = std::max(best, v);
    }
    a.team[index(t)] = ((cured_mask >> index(t)) & 1) ? 1.0 : best;
  }
  return a;
}

CureAbility cure_ability(const GameState& s) {
  std::array<CardSet, kMaxPlayers> hands{};
  std::array<Role, kMaxPlayers> roles{};
  for (int p = 0; p < s.num_players; ++p) {
    hands[p] = s.players[p].hand;
    roles[p] = s.players[p].role;
  }
  return cure_ability(std::span<const CardSet>(hands.data(), s.num_players),
                      std::span<const Role>(roles.data(), s.num_players), s.cured_mask,
                      s.world());
}

bool spend_eligible(const GameState& s, int player, CityId card) {
  const Color t = s.world().color(card);
  if (s.is_cured(t)) return true;
  return ability_after_move(s, t, card, player, -1) == ability_after_move(s, t, card, -1, -1);
}

std::array<int, kNumColors> spend_slack(const GameState& s, int player) {
  const WorldMap& map = s.world();
  std::array<int, kNumColors> slack{};
  const PlayerState& me = s.players[player];
  for (Color t : kAllColors) {
    const int h = count_color(me.hand, map, t);
    if (s.is_cured(t)) {
      slack[index(t)] = h;
      continue;
    }
    double others = 0.0;
    for (int q = 0; q < s.num_players; ++q) {
      if (q == player) continue;
      others = std::max(others, individual_ability(count_color(s.players[q].hand, map, t),
                                                   s.players[q].role));
    }
    const double own = individual_ability(h, me.role);
    const int need = cure_cost(me.role);
    if (own <= others) {
      slack[index(t)] = h;
    } else if (h >= need) {
      slack[index(t)] = h - need;
    } else {
      slack[index(t)] = 0;
    }
  }
  return slack;
}

// --- reach -----------------------------------------------------------------

int ReachTable::cost(CityId city) const {
  int best = best_[city] >= 0 ? nodes_[best_[city]].level : kUnreachable;
  if (universal_cost_ != kUnreachable && (best == kUnreachable || universal_cost_ < best)) {
    return universal_cost_;
  }
  return best;
}

bool ReachTable::universal_wins(CityId city) const {
  if (universal_cost_ == kUnreachable) return false;
  if (best_[city] < 0) return true;
  const Node& b = nodes_[best_[city]];
  return universal_cost_ < b.level ||
         (universal_cost_ == b.level && universal_spent_.size() < b.spent.size());
}

CardSet ReachTable::spent(CityId city) const {
  if (universal_wins(city)) return universal_spent_;
  return best_[city] >= 0 ? nodes_[best_[city]].spent : CardSet{};
}

StepList ReachTable::route(CityId city) const {
  StepList steps;
  std::array<AtomicAction, kActionsPerTurn + 1> rev{};
  int n = 0;
  int node = best_[city];
  bool universal = universal_wins(city);
  if (universal) node = universal_parent_;
  if (node < 0) return steps;
  while (nodes_[node].parent >= 0) {
    rev[n++] = nodes_[node].via;
    node = nodes_[node].parent;
  }
  while (n > 0) steps.push_back(rev[--n]);
  if (universal) {
    AtomicAction last = universal_via_;
    last.city = city;
    steps.push_back(last);
  }
  return steps;
}

ReachTable reach(const GameState& s, int player, int budget, CardSet reserved) {
  ReachTable rt;
  rt.budget_ = budget;
  rt.best_.fill(-1);
  rt.head_.fill(-1);
  rt.nodes_.reserve(96);

  const WorldMap& map = s.world();
  const PlayerState& me = s.players[player];
  const CardSet pool = me.hand - reserved;
  const std::array<int, kNumColors> slack = spend_slack(s, player);
  const bool ops_available = me.role == Role::kOperationsExpert &&
                             (player != s.current_player || !s.ops_flight_used);
  CardSet cured_cards;
  for (Color t : kAllColors) {
    if (s.is_cured(t)) cured_cards |= map.color_set(t);
  }

  auto allowed = [&](CardSet spent, CityId k) {
    if (!pool.contains(k) || spent.contains(k)) return false;
    if (cured_cards.contains(k)) return true;
    const Color t = map.color(k);
    return (spent & map.color_set(t)).size() + 1 <= slack[index(t)];
  };

  auto add_node = [&rt](CityId city, int level, int parent, CardSet spent,
                        const AtomicAction& via) {
    for (int i = rt.head_[city]; i >= 0; i = rt.nodes_[i].next_same_city) {
      if (rt.nodes_[i].spent.is_subset_of(spent)) return;
    }
    const auto idx = static_cast<std::int16_t>(rt.nodes_.size());
    rt.nodes_.push_back({city, static_cast<std::uint8_t>(level),
                         static_cast<std::int16_t>(parent), rt.head_[city], spent, via});
    rt.head_[city] = idx;
    const int b = rt.best_[city];
    if (b < 0 || level < rt.nodes_[b].level ||
        (level == rt.nodes_[b].level && spent.size() < rt.nodes_[b].spent.size())) {
      rt.best_[city] = idx;
    }
  };

  auto consider_universal = [&rt](int level, int parent, const AtomicAction& via,
                                  CardSet spent) {
    if (rt.universal_cost_ == ReachTable::kUnreachable || level < rt.universal_cost_ ||
        (level == rt.universal_cost_ && spent.size() < rt.universal_spent_.size())) {
      rt.universal_cost_ = level;
      rt.universal_parent_ = static_cast<std::int16_t>(parent);
      rt.universal_via_ = via;
      rt.universal_spent_ = spent;
    }
  };

  add_node(me.location, 0, -1, CardSet{}, AtomicAction::pass());
  for (std::size_t i = 0; i < rt.nodes_.size(); ++i) {
    const ReachTable::Node n = rt.nodes_[i];
    if (n.level >= budget) continue;
    if (rt.universal_cost_ != ReachTable::kUnreachable && rt.universal_cost_ <= n.level) {
      continue;
    }
    const int next = n.level + 1;
    const int parent = static_cast<int>(i);

    if (allowed(n.spent, n.city)) {
      consider_universal(next, parent, AtomicAction::charter_flight(kNoCity, n.city),
                         n.spent | CardSet::of(n.city));
    }
    if (ops_available && s.stations.contains(n.city)) {
      // Prefer a cured-color card; otherwise the lowest eligible one.
      CityId pick = kNoCity;
      for (CityId k : (pool - n.spent) & cured_cards) {
        pick = k;
        break;
      }
      if (pick == kNoCity) {
        for (CityId k : pool - n.spent) {
          if (allowed(n.spent, k)) {
            pick = k;
            break;
          }
        }
      }
      if (pick != kNoCity) {
        consider_universal(next, parent, AtomicAction::ops_flight(kNoCity, pick),
                           n.spent | CardSet::of(pick));
      }
    }
    for (CityId nb : map.neighbors(n.city)) {
      add_node(nb, next, parent, n.spent, AtomicAction::drive(nb));
    }
    if (s.stations.contains(n.city)) {
      for (CityId st : s.stations) {
        if (st != n.city) add_node(st, next, parent, n.spent, AtomicAction::shuttle(st));
      }
    }
    for (CityId k : pool - n.spent) {
      if (k != n.city && allowed(n.spent, k)) {
        add_node(k, next, parent, n.spent | CardSet::of(k), AtomicAction::direct_flight(k));
      }
    }
  }
  return rt;
}

// --- enumeration -----------------------------------------------------------

MacroFilter MacroFilter::all() {
  MacroFilter f;
  f.cure = true;
  f.treat = {false, true, true, true};
  f.share_now = true;
  f.share_wait = true;
  f.build = true;
  f.walk_away = true;
  return f;
}

MacroPlanner::MacroPlanner(const GameState& state, int player, int actions_left)
    : state_(state), player_(player), actions_left_(actions_left),
      ability_(cure_ability(state)) {}

const ReachTable& MacroPlanner::routes() { return routes_reserving(CardSet{}); }

const ReachTable& MacroPlanner::routes_reserving(CardSet reserved) {
  for (const auto& [mask, table] : tables_) {
    if (mask == reserved) return table;
  }
  tables_.emplace_back(reserved, reach(state_, player_, actions_left_, reserved));
  return tables_.back().second;
}

std::optional<StepList> MacroPlanner::route_keeping(CityId city, CardSet keep, int max_cost) {
  {
    const ReachTable& rt = routes();
    const int c = rt.cost(city);
    if (c == ReachTable::kUnreachable || c > max_cost) return std::nullopt;
    if ((rt.spent(city) & keep).empty()) return rt.route(city);
  }
  const ReachTable& rt = routes_reserving(keep & state_.players[player_].hand);
  const int c = rt.cost(city);
  if (c == ReachTable::kUnreachable || c > max_cost) return std::nullopt;
  return rt.route(city);
}

void MacroPlanner::cures(std::vector<MacroAction>& out) {
  const WorldMap& map = state_.world();
  const PlayerState& me = state_.players[player_];
  const int need = cure_cost(me.role);
  for (Color t : kAllColors) {
    if (state_.is_cured(t)) continue;
    const CardSet colored = me.hand & map.color_set(t);
    if (colored.size() < need) continue;
    for (CityId st : state_.stations) {
      const ReachTable& rt = routes();
      const int c = rt.cost(st);
      if (c == ReachTable::kUnreachable || c > actions_left_ - 1) continue;
      StepList steps = rt.route(st);
      CardSet left = colored - rt.spent(st);
      if (left.size() < need) {
        auto alt = route_keeping(st, colored, actions_left_ - 1);
        if (!alt) continue;
        steps = *alt;
        left = colored;
      }
      CardSet pick;
      for (CityId k : left) {
        if (pick.size() == need) break;
        pick.insert(k);
      }
      MacroAction m;
      m.kind = MacroKind::kCure;
      m.player = static_cast<std::uint8_t>(player_);
      m.city = st;
      m.color = t;
      m.steps = steps;
      m.steps.push_back(AtomicAction::cure(t, pick));
      out.push_back(m);
    }
  }
}

void MacroPlanner::treats(int cube_count, std::vector<MacroAction>& out) {
  const int n = state_.world().num_cities();
  const ReachTable& rt = routes();
  for (int ci = 0; ci < n; ++ci) {
    const auto c = static_cast<CityId>(ci);
    for (Color t : kAllColors) {
      const int k = state_.cubes_at(c, t);
      if (k == 0 || (cube_count != 0 && k != cube_count)) continue;
      const int cost = rt.cost(c);
      if (cost == ReachTable::kUnreachable || cost > actions_left_ - 1) continue;
      MacroAction m;
      m.kind = MacroKind::kTreat;
      m.player = static_cast<std::uint8_t>(player_);
      m.city = c;
      m.color = t;
      m.steps = rt.route(c);
      m.steps.push_back(AtomicAction::treat(t));
      out.push_back(m);
    }
  }
}

void MacroPlanner::builds(std::vector<MacroAction>& out, int station_cap) {
  if (state_.stations.size() >= std::min(station_cap, kMaxStations)) return;
  const WorldMap& map = state_.world();
  const PlayerState& me = state_.players[player_];
  const bool free_build = me.role == Role::kOperationsExpert;
  for (int ci = 0; ci < map.num_cities(); ++ci) {
    const auto c = static_cast<CityId>(ci);
    if (state_.stations.contains(c)) continue;
    if (!free_build && !me.hand.contains(c)) continue;
    bool far_enough = true;
    for (CityId st : state_.stations) {
      if (map.walk_distance(c, st) < 4) {
        far_enough = false;
        break;
      }
    }
    if (!far_enough) continue;
    auto steps = route_keeping(c, free_build ? CardSet{} : CardSet::of(c), actions_left_ - 1);
    if (!steps) continue;
    MacroAction m;
    m.kind = MacroKind::kBuild;
    m.player = static_cast<std::uint8_t>(player_);
    m.city = c;
    m.steps = *steps;
    m.steps.push_back(AtomicAction::build());
    out.push_back(m);
  }
}

void MacroPlanner::share_macro(MacroKind kind, int other, CityId card, CityId meet,
                               std::vector<MacroAction>& out, bool immediate) {
  const WorldMap& map = state_.world();
  const PlayerState& me = state_.players[player_];
  const CardSet keep = kind == MacroKind::kShareGive
                           ? CardSet::of(card)
                           : (me.hand & map.color_set(map.color(card)));
  const bool other_there = state_.players[other].location == meet;
  std::optional<StepList> now;
  if (other_there) now = route_keeping(meet, keep, actions_left_ - 1);

  MacroAction m;
  m.kind = kind;
  m.player = static_cast<std::uint8_t>(player_);
  m.city = meet;
  m.color = map.color(card);
  m.card = card;
  m.other = static_cast<std::uint8_t>(other);
  if (immediate) {
    if (!now) return;
    m.steps = *now;
    m.steps.push_back(kind == MacroKind::kShareGive ? AtomicAction::give(other, card)
                                                    : AtomicAction::take(other, card));
    out.push_back(m);
    return;
  }
  if (now) return;  // the trade can happen this turn; no need to wait
  auto steps = route_keeping(meet, keep, actions_left_);
  if (!steps) return;
  m.waits = true;
  m.steps = *steps;
  while (m.cost() < actions_left_) m.steps.push_back(AtomicAction::pass());
  out.push_back(m);
}

void MacroPlanner::shares(bool immediate, std::vector<MacroAction>& out) {
  const WorldMap& map = state_.world();
  const PlayerState& me = state_.players[player_];
  for (int q = 0; q < state_.num_players; ++q) {
    if (q == player_) continue;
    const PlayerState& other = state_.players[q];
    for (CityId k : me.hand) {
      const Color t = map.color(k);
      if (state_.is_cured(t)) continue;
      if (!(ability_after_move(state_, t, k, player_, q) > ability_[t])) continue;
      share_macro(MacroKind::kShareGive, q, k, k, out, immediate);
      if (me.role == Role::kResearcher && other.location != k) {
        share_macro(MacroKind::kShareGive, q, k, other.location, out, immediate);
      }
    }
    for (CityId k : other.hand) {
      if (k != other.location && other.role != Role::kResearcher) continue;
      const Color t = map.color(k);
      if (state_.is_cured(t)) continue;
      if (!(ability_after_move(state_, t, k, q, player_) > ability_[t])) continue;
      share_macro(MacroKind::kShareTake, q, k, other.location, out, immediate);
    }
  }
}

MacroAction MacroPlanner::walk_away(Rng& rng) const {
  const WorldMap& map = state_.world();
  MacroAction m;
  m.kind = MacroKind::kWalkAway;
  m.player = static_cast<std::uint8_t>(player_);
  CityId at = state_.players[player_].location;
  for (int i = 0; i < actions_left_; ++i) {
    auto nbs = map.neighbors(at);
    at = nbs[rng.uniform(nbs.size())];
    m.steps.push_back(AtomicAction::drive(at));
  }
  m.city = at;
  return m;
}

std::vector<MacroAction> enumerate_macros(const GameState& state, int player,
                                          int actions_left, const MacroFilter& filter,
                                          Rng& rng) {
  std::vector<MacroAction> out;
  if (actions_left < 1) return out;
  MacroPlanner planner(state, player, actions_left);
  if (filter.cure) planner.cures(out);
  for (int k = 1; k <= kMaxCubesPerCity; ++k) {
    if (filter.treat[k]) planner.treats(k, out);
  }
  if (filter.share_now) planner.shares(true, out);
  if (filter.share_wait) planner.shares(false, out);
  if (filter.build) planner.builds(out, filter.station_cap);
  if (filter.walk_away) out.push_back(planner.walk_away(rng));
  return out;
}

// --- execution -------------------------------------------------------------

int execute_macro(GameState& state, const MacroAction& macro, EventLog* log) {
  int wasted = 0;
  for (const AtomicAction& step : macro.steps) {
    if (!state.ongoing() || state.actions_left == 0 ||
        state.current_player != macro.player) {
      break;
    }
    if (is_legal(state, step)) {
      apply_action(state, step, log);
    } else {
      apply_action(state, AtomicAction::pass(), log);
      ++wasted;
    }
  }
  return wasted;
}

bool replayable(const GameState& state, const MacroAction& macro) {
  if (state.current_player != macro.player || macro.cost() > state.actions_left) return false;
  GameState s = state;
  for (const AtomicAction& step : macro.steps) {
    if (!s.ongoing()) return true;
    if (!is_legal(s, step)) return false;
    apply_action(s, step);
  }
  return true;
}

CityId choose_discard(const GameState& s, int player, Rng& rng) {
  const WorldMap& map = s.world();
  const CureAbility before = cure_ability(s);
  std::array<CityId, kMaxCities> ties{};
  int n = 0;
  double best = 2.0;
  for (CityId k : s.players[player].hand) {
    const Color t = map.color(k);
    const double drop = before[t] - ability_after_move(s, t, k, player, -1);
    if (drop < best - 1e-12) {
      best = drop;
      n = 0;
    }
    if (std::abs(drop - best) <= 1e-12) ties[n++] = k;
  }
  if (n == 0) throw Error("choose_discard on an empty hand");
  return ties[rng.uniform(static_cast<std::uint64_t>(n))];
}

DiscardChooser discard_chooser(Rng& rng) {
  return [&rng](const GameState& s, int player) { return choose_discard(s, player, rng); };
}

}  // namespace pandemic
