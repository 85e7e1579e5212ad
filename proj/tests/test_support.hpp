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

// Builders for hand-made maps and states used across the test suites.

#ifndef PANDEMIC_TESTS_TEST_SUPPORT_HPP_
#define PANDEMIC_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "pandemic/engine.hpp"
#include "pandemic/macros.hpp"

namespace pandemic::testing {

inline std::shared_ptr<const WorldMap> make_map(
    const std::vector<std::pair<std::string, Color>>& cities,
    const std::vector<std::pair<int, int>>& edges, int start = 0) {
  std::vector<City> cs;
  for (const auto& [name, color] : cities) cs.push_back({name, color});
  std::vector<std::pair<CityId, CityId>> directed;
  for (auto [a, b] : edges) {
    directed.emplace_back(static_cast<CityId>(a), static_cast<CityId>(b));
    directed.emplace_back(static_cast<CityId>(b), static_cast<CityId>(a));
  }
  return std::make_shared<const WorldMap>(std::move(cs), std::move(directed),
                                          static_cast<CityId>(start));
}

// Cities named C0..C{n-1}; colors cycle unless `color` is given.
inline std::shared_ptr<const WorldMap> path_map(int n, std::optional<Color> color = {}) {
  std::vector<std::pair<std::string, Color>> cities;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    cities.emplace_back("C" + std::to_string(i), color ? *color : kAllColors[i % 4]);
    if (i > 0) edges.emplace_back(i - 1, i);
  }
  return make_map(cities, edges);
}

// Random connected map: a random spanning tree plus extra edges.
inline std::shared_ptr<const WorldMap> random_map(int n, Rng& rng, double extra = 0.3) {
  std::vector<std::pair<std::string, Color>> cities;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    cities.emplace_back("C" + std::to_string(i), kAllColors[rng.uniform(4)]);
    if (i > 0) edges.emplace_back(static_cast<int>(rng.uniform(i)), i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool present = std::find(edges.begin(), edges.end(), std::pair{i, j}) != edges.end() ||
                     std::find(edges.begin(), edges.end(), std::pair{j, i}) != edges.end();
      if (!present && rng.uniform_real() < extra) edges.emplace_back(i, j);
    }
  }
  return make_map(cities, edges);
}

// Fresh game with every cube removed from the board.
inline GameState clean_state(std::shared_ptr<const WorldMap> map, std::vector<Role> roles,
                             int epidemics = 4, std::uint64_t seed = 1) {
  GameState s = new_game(std::move(map), roles, epidemics, seed);
  for (auto& city : s.cubes) city.fill(0);
  s.supply.fill(kCubesPerColor);
  return s;
}

inline void set_cubes(GameState& s, CityId c, Color t, int k) {
  const int before = s.cubes[c][index(t)];
  s.cubes[c][index(t)] = static_cast<std::uint8_t>(k);
  s.supply[index(t)] = static_cast<std::uint8_t>(s.supply[index(t)] + before - k);
}

// Moves a city card into a player's hand from wherever it is.
inline void give_card(GameState& s, int player, CityId card) {
  for (int p = 0; p < s.num_players; ++p) s.players[p].hand.erase(card);
  s.player_deck.discard.erase(card);
  auto& d = s.player_deck;
  auto end = d.cards.begin() + d.size;
  auto it = std::find(d.cards.begin(), end, card);
  if (it != end) {
    std::copy(it + 1, end, it);
    --d.size;
  }
  s.players[player].hand.insert(card);
}

inline void clear_hand(GameState& s, int player) {
  s.player_deck.discard |= s.players[player].hand;
  s.players[player].hand = CardSet{};
}

inline void clear_hands(GameState& s) {
  for (int p = 0; p < s.num_players; ++p) clear_hand(s, p);
}

// Puts two city cards on top of the player deck so the next draw has no
// epidemic.
inline void safe_top(GameState& s) {
  auto& d = s.player_deck;
  int placed = 0;
  for (int i = d.size - 1; i >= 0 && placed < 2; --i) {
    if (d.cards[i] != kEpidemicCard) {
      std::swap(d.cards[i], d.cards[d.size - 1 - placed]);
      ++placed;
    }
  }
}

// Plays random legal actions until the game ends or `max_turns` pass.
inline void random_playout(GameState& s, Rng& rng, int max_turns = 1000) {
  while (s.ongoing() && s.turn_count <= max_turns) {
    if (s.actions_left == 0) {
      end_turn(s);
      continue;
    }
    auto actions = legal_actions(s);
    apply_action(s, actions[rng.uniform(actions.size())]);
  }
}

}  // namespace pandemic::testing

#endif  // PANDEMIC_TESTS_TEST_SUPPORT_HPP_
