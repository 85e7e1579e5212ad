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

// State evaluation functions, all in [0, 1].
//
//   f_od = N_d / 4                                 cures discovered
//   f_oa = (1/1.3) (sum_t A(t) / 4 + 0.3 N_d / 4)  cure progress
//   f_ca = sum_t N_c(t) / 96                       mean cubes off the board
//   f_cm = min_t N_c(t) / 24
//   f_cp = prod_t N_c(t) / 24
//   f_b  = 1 - N_b / 8                             outbreaks
//
// Wrappers: "w:" scores a win 1 and a loss 0; "p:" scores a win 1 and a loss
// C_p times the base.

#ifndef PANDEMIC_EVAL_HPP_
#define PANDEMIC_EVAL_HPP_

#include <string>
#include <string_view>

#include "pandemic/state.hpp"

namespace pandemic {

enum class BaseFitness : std::uint8_t { kOd, kOa, kCa, kCm, kCp, kB };
enum class Wrapper : std::uint8_t { kNone, kWinLose, kPenalty };

std::string_view to_string(BaseFitness b);
BaseFitness parse_base_fitness(std::string_view name);

struct FitnessSpec {
  BaseFitness base = BaseFitness::kOa;
  bool average = false;                 // mean of `base` and `second`
  BaseFitness second = BaseFitness::kCm;
  Wrapper wrapper = Wrapper::kNone;
  double penalty = 0.1;                 // C_p
  bool clamp_oa = false;                // f_oa as min(1, ...) with the 1.2 term

  bool operator==(const FitnessSpec&) const = default;
};

// Accepts "[w:|p:]base" or "[w:|p:]avg(base,base)", e.g. "p:avg(f_oa,f_cm)".
// Throws Error on anything else.
FitnessSpec parse_fitness(std::string_view text);
std::string to_string(const FitnessSpec& spec);

double base_fitness(const GameState& state, BaseFitness base, bool clamp_oa = false);
double evaluate(const GameState& state, const FitnessSpec& spec);

}  // namespace pandemic

#endif  // PANDEMIC_EVAL_HPP_
