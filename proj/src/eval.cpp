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

#include "pandemic/eval.hpp"

#include <algorithm>

#include "pandemic/macros.hpp"

namespace pandemic {

namespace {

constexpr std::array<std::string_view, 6> kBaseNames = {"f_od", "f_oa", "f_ca",
                                                        "f_cm", "f_cp", "f_b"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(BaseFitness b) { return kBaseNames[static_cast<int>(b)]; }

BaseFitness parse_base_fitness(std::string_view name) {
  name = trim(name);
  for (std::size_t i = 0; i < kBaseNames.size(); ++i) {
    if (kBaseNames[i] == name) return static_cast<BaseFitness>(i);
  }
  throw Error("unknown fitness function '" + std::string(name) + "'");
}

FitnessSpec parse_fitness(std::string_view text) {
  FitnessSpec spec;
  std::string_view s = trim(text);
  if (s.starts_with("w:")) {
    spec.wrapper = Wrapper::kWinLose;
    s.remove_prefix(2);
  } else if (s.starts_with("p:")) {
    spec.wrapper = Wrapper::kPenalty;
    s.remove_prefix(2);
  }
  s = trim(s);
  if (s.starts_with("avg(")) {
    if (!s.ends_with(")")) throw Error("unterminated avg( in '" + std::string(text) + "'");
    std::string_view inner = s.substr(4, s.size() - 5);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
      throw Error("avg() needs two fitness functions in '" + std::string(text) + "'");
    }
    spec.average = true;
    spec.base = parse_base_fitness(inner.substr(0, comma));
    spec.second = parse_base_fitness(inner.substr(comma + 1));
  } else {
    spec.base = parse_base_fitness(s);
  }
  return spec;
}

std::string to_string(const FitnessSpec& spec) {
  std::string out;
  if (spec.wrapper == Wrapper::kWinLose) out = "w:";
  if (spec.wrapper == Wrapper::kPenalty) out = "p:";
  if (spec.average) {
    out += "avg(";
    out += to_string(spec.base);
    out += ",";
    out += to_string(spec.second);
    out += ")";
  } else {
    out += to_string(spec.base);
  }
  return out;
}

double base_fitness(const GameState& s, BaseFitness base, bool clamp_oa) {
  const double cured = s.num_cured() / 4.0;
  switch (base) {
    case BaseFitness::kOd:
      return cured;
    case BaseFitness::kOa: {
      const double progress = cure_ability(s).total() / 4.0;
      if (clamp_oa) return std::min(1.0, (progress + 1.2 * cured) / 1.3);
      return (progress + 0.3 * cured) / 1.3;
    }
    case BaseFitness::kCa: {
      double sum = 0.0;
      for (Color t : kAllColors) sum += s.supply_of(t) / 24.0;
      return sum / 4.0;
    }
    case BaseFitness::kCm: {
      int least = kCubesPerColor;
      for (Color t : kAllColors) least = std::min(least, s.supply_of(t));
      return least / 24.0;
    }
    case BaseFitness::kCp: {
      double prod = 1.0;
      for (Color t : kAllColors) prod *= s.supply_of(t) / 24.0;
      return prod;
    }
    case BaseFitness::kB:
      return 1.0 - s.outbreaks / 8.0;
  }
  return 0.0;
}

double evaluate(const GameState& s, const FitnessSpec& spec) {
  double base = base_fitness(s, spec.base, spec.clamp_oa);
  if (spec.average) base = 0.5 * (base + base_fitness(s, spec.second, spec.clamp_oa));
  switch (spec.wrapper) {
    case Wrapper::kNone:
      return base;
    case Wrapper::kWinLose:
      if (s.status == Status::kWon) return 1.0;
      if (s.status == Status::kLost) return 0.0;
      return base;
    case Wrapper::kPenalty:
      if (s.status == Status::kWon) return 1.0;
      if (s.status == Status::kLost) return spec.penalty * base;
      return base;
  }
  return base;
}

}  // namespace pandemic
