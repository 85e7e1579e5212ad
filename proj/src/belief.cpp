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

#include "pandemic/belief.hpp"

#include <algorithm>

namespace pandemic {

namespace {

// Writes the player deck bottom-up from the skeleton, drawing city cards
// from `cards` in order. Epidemics go at `epidemic_pos(partition_size)`.
template <typename EpidemicPos>
void fill_player_deck(PlayerDeck& deck, const std::vector<DeckPartition>& skeleton,
                      std::span<const CityId> cards, EpidemicPos epidemic_pos) {
  deck.size = 0;
  std::size_t next = 0;
  for (auto it = skeleton.rbegin(); it != skeleton.rend(); ++it) {
    const int epi = it->has_epidemic ? epidemic_pos(it->size) : -1;
    for (int i = 0; i < it->size; ++i) {
      deck.cards[deck.size++] = i == epi ? kEpidemicCard : cards[next++];
    }
  }
}

}  // namespace

std::vector<DeckPartition> deck_skeleton(std::span<const std::uint8_t> initial_sizes_top_first,
                                         int deck_size, int epidemics_drawn) {
  std::vector<DeckPartition> bottom_up;
  int remaining = deck_size;
  const int partitions = static_cast<int>(initial_sizes_top_first.size());
  for (int k = partitions - 1; k >= epidemics_drawn && remaining > 0; --k) {
    const int size = initial_sizes_top_first[k];
    if (remaining >= size) {
      bottom_up.push_back({size, true});
      remaining -= size;
    } else {
      // Partly drawn, but its epidemic has not shown up yet.
      bottom_up.push_back({remaining, true});
      remaining = 0;
    }
  }
  if (remaining > 0) bottom_up.push_back({remaining, false});
  return {bottom_up.rbegin(), bottom_up.rend()};
}

BeliefState observe(const GameState& state) {
  BeliefState b;
  b.visible = state;
  b.infection_sections = state.infection.sections_top_to_bottom();
  b.player_deck_skeleton =
      deck_skeleton(std::span<const std::uint8_t>(state.player_deck.partition_sizes.begin(),
                                                  state.player_deck.partition_sizes.size()),
                    state.player_deck.size, state.epidemics_drawn);
  b.unseen_city_cards = state.player_deck.city_cards();

  // Canonical hidden order: ascending within each infection section...
  InfectionDeck& inf = b.visible.infection;
  int pos = 0;
  for (std::uint8_t len : inf.sections) {
    std::sort(inf.cards.begin() + pos, inf.cards.begin() + pos + len);
    pos += len;
  }
  // ...and unseen player cards in ascending order, epidemics at the bottom
  // of their partitions.
  std::vector<CityId> unseen(b.unseen_city_cards.begin(), b.unseen_city_cards.end());
  fill_player_deck(b.visible.player_deck, b.player_deck_skeleton, unseen,
                   [](int) { return 0; });
  b.visible.rng = Rng(0);
  return b;
}

GameState determinize(const BeliefState& belief, std::uint64_t seed) {
  GameState s = belief.visible;
  Rng rng(seed);

  int infection_total = 0;
  for (CardSet sec : belief.infection_sections) infection_total += sec.size();
  if (infection_total != s.infection.size) {
    throw Error("belief infection sections do not match the deck size");
  }
  int skeleton_total = 0;
  int skeleton_cities = 0;
  for (const DeckPartition& p : belief.player_deck_skeleton) {
    if (p.size <= 0) throw Error("empty deck partition");
    skeleton_total += p.size;
    skeleton_cities += p.size - (p.has_epidemic ? 1 : 0);
  }
  if (skeleton_total != s.player_deck.size ||
      skeleton_cities != belief.unseen_city_cards.size()) {
    throw Error("player deck skeleton does not match the unseen card count");
  }

  InfectionDeck& inf = s.infection;
  inf.size = 0;
  inf.sections.clear();
  std::array<CityId, kMaxCities> buf{};
  for (auto it = belief.infection_sections.rbegin(); it != belief.infection_sections.rend();
       ++it) {
    int n = 0;
    for (CityId c : *it) buf[n++] = c;
    rng.shuffle(std::span<CityId>(buf.data(), n));
    inf.push_section(std::span<const CityId>(buf.data(), n));
  }

  int n = 0;
  for (CityId c : belief.unseen_city_cards) buf[n++] = c;
  rng.shuffle(std::span<CityId>(buf.data(), n));
  fill_player_deck(s.player_deck, belief.player_deck_skeleton,
                   std::span<const CityId>(buf.data(), n),
                   [&rng](int size) { return rng.uniform_int(size); });

  s.rng = Rng(derive_seed({seed, 0x646574ULL}));
  return s;
}

}  // namespace pandemic
