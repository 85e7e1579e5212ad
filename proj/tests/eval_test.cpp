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

#include "oracles.hpp"
#include "pandemic/eval.hpp"
#include "test_support.hpp"

using namespace pandemic;
using namespace pandemic::testing;

namespace {

const std::vector<Role> kFour = {Role::kOperationsExpert, Role::kMedic, Role::kResearcher,
                                 Role::kScientist};
constexpr BaseFitness kBases[] = {BaseFitness::kOd, BaseFitness::kOa, BaseFitness::kCa,
                                  BaseFitness::kCm, BaseFitness::kCp, BaseFitness::kB};

GameState random_state(Rng& rng) {
  GameState s = new_game(standard_map(), kFour, 4 + rng.uniform(3), rng());
  random_playout(s, rng, static_cast<int>(rng.uniform(30)));
  s.cured_mask = static_cast<std::uint8_t>(rng.uniform(16));
  return s;
}

}  // namespace

TEST_CASE("worked values") {
  GameState s = clean_state(standard_map(), kFour);
  s.outbreaks = 3;
  CHECK(base_fitness(s, BaseFitness::kB) == 0.625);
  s.cured_mask = 1 << index(Color::kRed);
  CHECK(base_fitness(s, BaseFitness::kOd) == 0.25);
  CHECK(base_fitness(s, BaseFitness::kCp) == 1.0);
  set_cubes(s, 0, Color::kBlue, 3);
  s.supply[index(Color::kBlue)] = 0;  // whole color on the board
  CHECK(base_fitness(s, BaseFitness::kCp) == 0.0);
  CHECK(base_fitness(s, BaseFitness::kCm) == 0.0);

  GameState lost = clean_state(standard_map(), kFour);
  lost.status = Status::kLost;
  lost.loss_reason = LossReason::kOutbreakLimit;
  lost.outbreaks = 3;
  lost.supply = {24, 24, 24, 24};
  FitnessSpec p = parse_fitness("p:f_b");
  CHECK(evaluate(lost, p) == doctest::Approx(0.1 * 0.625).epsilon(1e-15));
  CHECK(evaluate(lost, parse_fitness("w:f_b")) == 0.0);
  lost.status = Status::kWon;
  CHECK(evaluate(lost, p) == 1.0);
  CHECK(evaluate(lost, parse_fitness("w:f_b")) == 1.0);
}

TEST_CASE("f_oa reaches exactly 1 with everything cured") {
  GameState s = clean_state(standard_map(), kFour);
  s.cured_mask = 0x0f;
  CHECK(base_fitness(s, BaseFitness::kOa) == 1.0);
  CHECK(base_fitness(s, BaseFitness::kOa, true) == 1.0);
  s.cured_mask = 0x03;
  CHECK(base_fitness(s, BaseFitness::kOa) < 1.0);
  // The clamped reading saturates earlier.
  CHECK(base_fitness(s, BaseFitness::kOa, true) > base_fitness(s, BaseFitness::kOa));
}

TEST_CASE("evaluation matches the formulas on random states") {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    GameState s = random_state(rng);
    for (BaseFitness b : kBases) {
      const double v = base_fitness(s, b);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(std::abs(v - oracle_fitness(s, std::string(to_string(b)))) < 1e-12);
    }
    const double ca = base_fitness(s, BaseFitness::kCa);
    const double cm = base_fitness(s, BaseFitness::kCm);
    const double cp = base_fitness(s, BaseFitness::kCp);
    CHECK(cp <= cm + 1e-15);
    CHECK(cm <= ca + 1e-15);
    const double avg = evaluate(s, parse_fitness("avg(f_oa,f_cm)"));
    CHECK(std::abs(avg - 0.5 * (oracle_fitness(s, "f_oa") + cm)) < 1e-12);
    if (s.ongoing()) {
      for (const char* spec : {"f_od", "w:f_od", "p:f_od"}) {
        CHECK(evaluate(s, parse_fitness(spec)) == base_fitness(s, BaseFitness::kOd));
      }
    }
  }
}

TEST_CASE("monotone in cubes, cures and outbreaks") {
  GameState s = clean_state(standard_map(), kFour);
  double ca = 1.0;
  double cm = 1.0;
  double cp = 1.0;
  Rng rng(4);
  for (int step = 0; step < 40; ++step) {
    const auto t = kAllColors[rng.uniform(4)];
    const auto c = static_cast<CityId>(rng.uniform(48));
    if (s.cubes_at(c, t) == 3) continue;
    set_cubes(s, c, t, s.cubes_at(c, t) + 1);
    CHECK(base_fitness(s, BaseFitness::kCa) <= ca);
    CHECK(base_fitness(s, BaseFitness::kCm) <= cm);
    CHECK(base_fitness(s, BaseFitness::kCp) <= cp);
    ca = base_fitness(s, BaseFitness::kCa);
    cm = base_fitness(s, BaseFitness::kCm);
    cp = base_fitness(s, BaseFitness::kCp);
  }
  double od = -1;
  for (std::uint8_t m : {0, 1, 3, 7, 15}) {
    s.cured_mask = m;
    CHECK(base_fitness(s, BaseFitness::kOd) > od);
    od = base_fitness(s, BaseFitness::kOd);
  }
  double b = 2;
  for (int n = 0; n <= 8; ++n) {
    s.outbreaks = static_cast<std::uint8_t>(n);
    CHECK(base_fitness(s, BaseFitness::kB) < b);
    b = base_fitness(s, BaseFitness::kB);
  }
}

TEST_CASE("fitness spec parsing") {
  FitnessSpec s = parse_fitness("p:avg(f_oa,f_cm)");
  CHECK(s.wrapper == Wrapper::kPenalty);
  CHECK(s.average);
  CHECK(s.base == BaseFitness::kOa);
  CHECK(s.second == BaseFitness::kCm);
  CHECK(s.penalty == 0.1);
  for (const char* text : {"f_od", "w:f_od", "p:f_b", "avg(f_ca,f_cp)", "w:avg(f_od,f_b)"}) {
    CHECK(to_string(parse_fitness(text)) == text);
  }
  CHECK(to_string(parse_fitness(" w: avg( f_oa , f_cm ) ")) == "w:avg(f_oa,f_cm)");
  for (const char* bad : {"", "f_x", "q:f_od", "avg(f_od)", "avg(f_od,f_cm", "w:", "F_OD"}) {
    CHECK_THROWS_AS(parse_fitness(bad), Error);
  }
}
