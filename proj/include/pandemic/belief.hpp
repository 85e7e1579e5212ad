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

#ifndef PANDEMIC_BELIEF_HPP_
#define PANDEMIC_BELIEF_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "pandemic/state.hpp"

namespace pandemic {

struct DeckPartition {
  int size = 0;
  bool has_epidemic = false;
  bool operator==(const DeckPartition&) const = default;
};

// What the players can know about a game. Hands are public. The hidden
// orders inside `visible` are canonicalized (sorted within each section or
// partition) and its random stream is reset, so two states that differ only
// in hidden order observe to equal beliefs.
struct BeliefState {
  GameState visible;
  std::vector<CardSet> infection_sections;           // top first
  std::vector<DeckPartition> player_deck_skeleton;   // top first
  CardSet unseen_city_cards;

  bool operator==(const BeliefState&) const = default;
};

// Partition structure of the player deck implied by the initial partition
// sizes: epidemics appear in order, one per partition, so the partitions
// below the current one are intact and still hold their epidemic.
std::vector<DeckPartition> deck_skeleton(std::span<const std::uint8_t> initial_sizes_top_first,
                                         int deck_size, int epidemics_drawn);

BeliefState observe(const GameState& state);

// Samples a concrete state consistent with the belief: every infection
// section is shuffled on its own, and the unseen city cards are dealt
// uniformly into the player-deck partitions with each epidemic at a uniform
// position inside its partition. Throws Error if the skeleton does not match
// the card counts.
GameState determinize(const BeliefState& belief, std::uint64_t seed);

}  // namespace pandemic

#endif  // PANDEMIC_BELIEF_HPP_
