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

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "pandemic/belief.hpp"
#include "test_support.hpp"

using namespace pandemic;
using namespace pandemic::testing;

namespace {

const std::vector<Role> kFour = {Role::kOperationsExpert, Role::kMedic, Role::kResearcher,
                                 Role::kScientist};

std::vector<DeckPartition> skeleton(std::vector<std::uint8_t> sizes, int deck, int drawn) {
  return deck_skeleton(sizes, deck, drawn);
}

// Rebuilds the infection deck of `s` from sections given top first; every
// other card goes to the discard pile.
void set_infection(GameState& s, const std::vector<std::vector<CityId>>& top_first) {
  auto& inf = s.infection;
  inf.size = 0;
  inf.sections.clear();
  inf.discard = s.world().all_cities();
  for (auto it = top_first.rbegin(); it != top_first.rend(); ++it) {
    for (CityId c : *it) inf.discard.erase(c);
    inf.push_section(*it);
  }
}

CityId infection_from_top(const GameState& s, int k) { return s.infection.cards[s.infection.size - 1 - k]; }

// Belief whose player deck is one partition of `size` cards with an epidemic.
BeliefState single_partition_belief(int size) {
  GameState s = new_game(standard_map(), kFour, 4, 3);
  BeliefState b = observe(s);
  std::vector<CityId> cards(b.unseen_city_cards.begin(), b.unseen_city_cards.end());
  b.unseen_city_cards = CardSet{};
  for (int i = 0; i < size - 1; ++i) b.unseen_city_cards.insert(cards[i]);
  b.player_deck_skeleton = {{size, true}};
  b.visible.player_deck.size = static_cast<std::uint8_t>(size);
  return b;
}

}  // namespace

TEST_CASE("deck skeleton") {
  using P = DeckPartition;
  CHECK(skeleton({13, 13, 13, 13}, 30, 2) == std::vector<P>{{4, false}, {13, true}, {13, true}});
  CHECK(skeleton({11, 11, 11, 11}, 44, 0) ==
        std::vector<P>{{11, true}, {11, true}, {11, true}, {11, true}});
  CHECK(skeleton({11, 11, 11, 11}, 40, 0) ==
        std::vector<P>{{7, true}, {11, true}, {11, true}, {11, true}});
  CHECK(skeleton({11, 11, 11, 11}, 40, 1) ==
        std::vector<P>{{7, false}, {11, true}, {11, true}, {11, true}});
  CHECK(skeleton({9, 9, 8, 8, 8}, 8, 4) == std::vector<P>{{8, true}});
  CHECK(skeleton({9, 9, 8, 8, 8}, 5, 5) == std::vector<P>{{5, false}});
  CHECK(skeleton({11, 11, 11, 11}, 0, 4).empty());
}

TEST_CASE("observe exposes the structure of a real game") {
  auto map = standard_map();
  GameState s = new_game(map, kFour, 5, 11);
  Rng rng(4);
  random_playout(s, rng, 12);
  BeliefState b = observe(s);
  int skel = 0;
  int skel_epi = 0;
  for (const auto& p : b.player_deck_skeleton) {
    skel += p.size;
    skel_epi += p.has_epidemic;
  }
  CHECK(skel == s.player_deck.size);
  CHECK(skel_epi == s.player_deck.epidemics_remaining());
  CHECK(b.unseen_city_cards == s.player_deck.city_cards());
  int inf = 0;
  for (CardSet sec : b.infection_sections) inf += sec.size();
  CHECK(inf == s.infection.size);
  CHECK(b.infection_sections == s.infection.sections_top_to_bottom());
  for (int p = 0; p < s.num_players; ++p) CHECK(b.visible.players[p] == s.players[p]);
  CHECK(b.visible.cubes == s.cubes);
  CHECK(b.visible.infection.discard == s.infection.discard);
}

TEST_CASE("observe ignores hidden order") {
  auto map = standard_map();
  GameState s = new_game(map, kFour, 4, 5);
  BeliefState b = observe(s);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GameState d = determinize(b, seed);
    CHECK(observe(d) == b);
    CHECK(check_invariants(d) == "");
    CHECK(d.players == s.players);
    CHECK(d.cubes == s.cubes);
    CHECK(d.stations == s.stations);
    CHECK(d.infection.discard == s.infection.discard);
    CHECK(d.player_deck.discard == s.player_deck.discard);
    CHECK(d.epidemics_drawn == s.epidemics_drawn);
  }
  CHECK(determinize(b, 9) == determinize(b, 9));
  CHECK_FALSE(determinize(b, 9) == determinize(b, 10));
}

TEST_CASE("determinize keeps the infection sections") {
  GameState s = new_game(standard_map(), kFour, 4, 2);
  const CityId a = 3, b = 10, c = 20;
  set_infection(s, {{a}, {b, c}});
  BeliefState belief = observe(s);
  REQUIRE(belief.infection_sections.size() == 2);
  const int n = 20000;
  int b_second = 0;
  for (int i = 0; i < n; ++i) {
    GameState d = determinize(belief, i);
    REQUIRE(d.infection.size == 3);
    REQUIRE(infection_from_top(d, 0) == a);
    const CityId second = infection_from_top(d, 1);
    REQUIRE((second == b || second == c));
    b_second += second == b;
  }
  const double sigma = std::sqrt(n * 0.25);
  CHECK(std::abs(b_second - n / 2.0) < 3 * sigma);
}

TEST_CASE("determinize covers every order of a section") {
  GameState s = new_game(standard_map(), kFour, 4, 2);
  set_infection(s, {{1, 2, 3}});
  BeliefState belief = observe(s);
  std::map<std::array<CityId, 3>, int> seen;
  for (int i = 0; i < 600; ++i) {
    GameState d = determinize(belief, i);
    seen[{d.infection.cards[0], d.infection.cards[1], d.infection.cards[2]}]++;
  }
  CHECK(seen.size() == 6);
  for (const auto& [order, count] : seen) CHECK(count > 50);
}

TEST_CASE("epidemic position is uniform within its partition") {
  BeliefState b = single_partition_belief(13);
  const int per_slot = 1000;
  const int n = per_slot * 13;
  std::array<int, 13> slot{};
  for (int i = 0; i < n; ++i) {
    GameState d = determinize(b, i);
    int found = -1;
    for (int k = 0; k < 13; ++k) {
      if (d.player_deck.cards[k] == kEpidemicCard) {
        REQUIRE(found == -1);
        found = k;
      }
    }
    REQUIRE(found >= 0);
    slot[found]++;
    REQUIRE(d.player_deck.city_cards() == b.unseen_city_cards);
  }
  const double sigma = std::sqrt(per_slot * (12.0 / 13.0));
  // 13 cells share one fixed seed range; each bound is at 4 sigma.
  for (int k = 0; k < 13; ++k) CHECK(std::abs(slot[k] - per_slot) < 4 * sigma);
}

TEST_CASE("epidemics stay inside their partitions") {
  GameState s = new_game(standard_map(), kFour, 6, 21);
  Rng rng(2);
  random_playout(s, rng, 6);
  REQUIRE(s.ongoing());
  BeliefState b = observe(s);
  for (int i = 0; i < 300; ++i) {
    GameState d = determinize(b, i);
    int pos = d.player_deck.size;  // walk top-down
    for (const auto& part : b.player_deck_skeleton) {
      int epi = 0;
      for (int k = 0; k < part.size; ++k) epi += d.player_deck.cards[pos - 1 - k] == kEpidemicCard;
      CHECK(epi == (part.has_epidemic ? 1 : 0));
      pos -= part.size;
    }
    CHECK(pos == 0);
  }
}

TEST_CASE("single remaining card") {
  BeliefState b = observe(new_game(standard_map(), kFour, 4, 3));
  b.unseen_city_cards = CardSet::of(b.unseen_city_cards.first());
  b.player_deck_skeleton = {{1, false}};
  b.visible.player_deck.size = 1;
  GameState first = determinize(b, 1);
  for (std::uint64_t seed = 2; seed < 20; ++seed) {
    GameState d = determinize(b, seed);
    CHECK(d.player_deck.size == 1);
    CHECK(d.player_deck.cards[0] == first.player_deck.cards[0]);
    CHECK(d.player_deck.cards[0] == b.unseen_city_cards.first());
  }
}

TEST_CASE("inconsistent beliefs are rejected") {
  GameState s = new_game(standard_map(), kFour, 4, 2);
  BeliefState b = observe(s);
  SUBCASE("skeleton too long") {
    b.player_deck_skeleton.front().size++;
    CHECK_THROWS_AS(determinize(b, 1), Error);
  }
  SUBCASE("unseen cards do not fit") {
    b.unseen_city_cards.erase(b.unseen_city_cards.first());
    CHECK_THROWS_AS(determinize(b, 1), Error);
  }
  SUBCASE("empty partition") {
    b.player_deck_skeleton.push_back({0, false});
    CHECK_THROWS_AS(determinize(b, 1), Error);
  }
  SUBCASE("infection sections do not match") {
    b.infection_sections.front().erase(b.infection_sections.front().first());
    CHECK_THROWS_AS(determinize(b, 1), Error);
  }
}
