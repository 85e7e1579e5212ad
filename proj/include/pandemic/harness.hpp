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

// Experiment pipeline: setup generation and profiling, testbed selection by
// k-medoids, experiment grids and their results tables.

#ifndef PANDEMIC_HARNESS_HPP_
#define PANDEMIC_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pandemic/agents.hpp"

namespace pandemic {

// Duration normalization constant (player turns).
inline constexpr double kMaxGameTurns = 23.0;

inline constexpr std::array<Role, 4> kDefaultRoleOrder = {
    Role::kOperationsExpert, Role::kMedic, Role::kResearcher, Role::kScientist};

struct SetupProfile {
  int runs = 0;
  int wins = 0;
  double mean_duration = 0.0;  // player turns

  double win_ratio() const { return runs > 0 ? static_cast<double>(wins) / runs : 0.0; }
  double normalized_duration() const { return mean_duration / kMaxGameTurns; }
  bool operator==(const SetupProfile&) const = default;
};

struct SetupRecord {
  std::uint64_t seed = 0;
  std::string map_id;
  InitialDeal deal;
  std::optional<SetupProfile> profile;

  bool operator==(const SetupRecord&) const = default;
};

SetupRecord make_setup(const WorldMap& map, std::span<const Role> roles, int epidemics,
                       std::uint64_t seed);

// Initial state for one run: the recorded deal, in-game randomness from
// `run_seed`.
GameState initial_state(std::shared_ptr<const WorldMap> map, const SetupRecord& setup,
                        std::uint64_t run_seed);

std::string setups_to_json(const std::vector<SetupRecord>& setups, const WorldMap& map);
std::vector<SetupRecord> setups_from_json(std::string_view text, const WorldMap& map);
void write_setups(const std::filesystem::path& path, const std::vector<SetupRecord>& setups,
                  const WorldMap& map);
std::vector<SetupRecord> read_setups(const std::filesystem::path& path, const WorldMap& map);

enum class ActionClass : std::uint8_t { kMove, kTreat, kBuild, kShare, kCure, kPass };
inline constexpr int kNumActionClasses = 6;
ActionClass classify(ActionKind k);
std::string_view to_string(ActionClass c);

struct RunMetrics {
  bool won = false;
  int duration = 0;  // player turns started
  LossReason loss_reason = LossReason::kNone;
  int outbreaks = 0;
  std::array<int, 3> cube_histogram{};  // (city, color) pairs holding 1, 2, 3 cubes
  std::array<int, kNumActionClasses> actions{};
  int stations_built = 0;
  int epidemics = 0;

  int total_actions() const;
  double share_ratio() const;
  bool operator==(const RunMetrics&) const = default;
};

RunMetrics collect_metrics(const GameState& final_state,
                           const std::array<int, kNumActionClasses>& actions);

using AgentFactory = std::function<std::unique_ptr<Agent>()>;

AgentFactory dp_factory();
AgentFactory rhea_factory(const RheaConfig& cfg);

// Plays one game to the end. Steps that are illegal on the true state are
// replaced by Pass; leftover actions of the final turn count as Pass.
RunMetrics play_game(const GameState& initial, Agent& agent, std::uint64_t agent_seed,
                     EventLog* log = nullptr);

// Runs `fn(i)` for i in [0, n) on `threads` workers (0 = hardware).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

struct ProfileConfig {
  int setups = 1000;
  int runs = 30;
  int epidemics = 4;
  std::vector<Role> roles{kDefaultRoleOrder.begin(), kDefaultRoleOrder.end()};
  std::uint64_t master_seed = 1;
  unsigned threads = 0;
};

// Generates setups and profiles each with the given agent (one fresh agent
// per run).
std::vector<SetupRecord> generate_and_profile(std::shared_ptr<const WorldMap> map,
                                              const ProfileConfig& cfg,
                                              const AgentFactory& agent = dp_factory());

// PAM k-medoids with farthest-point initialization from a seeded start.
// Returns the medoid indices in ascending order.
std::vector<std::size_t> k_medoids(const std::vector<std::array<double, 2>>& points,
                                   std::size_t k, std::uint64_t seed);

struct SelectConfig {
  std::size_t k = 10;
  double top_fraction = 0.1;
  double min_win_ratio = 0.02;
  std::uint64_t seed = 1;
};

// Candidate pool: the top fraction by win ratio, keeping those at or above
// the minimum. Returns the pool indices (into `profiled`), best first.
std::vector<std::size_t> candidate_pool(const std::vector<SetupRecord>& profiled,
                                        const SelectConfig& cfg);

// Medoids of the candidate pool on (win ratio, normalized duration). Returns
// every candidate if the pool has at most k entries.
std::vector<SetupRecord> select_testbeds(const std::vector<SetupRecord>& profiled,
                                         const SelectConfig& cfg);

struct Condition {
  bool p_rand = false;
  bool d_rand = false;
  int epidemics = 4;
  int players = 4;
  bool operator==(const Condition&) const = default;
};

std::string to_string(const Condition& c);

struct AgentSpec {
  std::string kind = "dp";  // "dp" or "rhea"
  RheaConfig rhea;          // fitness inside is used by "rhea"
};

struct ExperimentGrid {
  std::vector<std::string> agents = {"dp", "rhea"};
  std::vector<FitnessSpec> fitness = {parse_fitness("p:avg(f_oa,f_cm)")};
  RheaConfig rhea;  // horizon, generations, trials, commit
  std::vector<SetupRecord> setups;
  int runs = 30;
  std::vector<bool> p_rand = {false};
  std::vector<bool> d_rand = {false};
  std::vector<int> epidemics = {4};
  std::vector<int> players = {4};
  std::uint64_t master_seed = 1;
  unsigned threads = 0;
};

// The setup a run is played from under a condition: the recorded deal when
// players and epidemics match it, otherwise a deal derived from the setup
// seed. Roles are shuffled under p_rand and drawn at random for fewer than
// four players; hidden decks are reshuffled under d_rand.
GameState condition_state(std::shared_ptr<const WorldMap> map, const SetupRecord& setup,
                          const Condition& cond, std::uint64_t run_seed);

struct ResultRow {
  std::string agent;
  std::string fitness;  // "-" for the default policy
  std::size_t setup = 0;
  std::uint64_t setup_seed = 0;
  Condition condition;
  int runs = 0;
  int wins = 0;
  std::array<int, 4> losses{};  // indexed by LossReason
  double mean_duration = 0.0;
  double mean_outbreaks = 0.0;
  std::array<double, 3> mean_cubes{};
  std::array<long, kNumActionClasses> action_totals{};
  double mean_stations_built = 0.0;
  std::optional<double> improvement_over_dp;

  double win_ratio() const { return runs > 0 ? static_cast<double>(wins) / runs : 0.0; }
  long total_actions() const;
  double action_ratio(ActionClass c) const;
  // Fraction of lost games with this reason (0 if no losses).
  double loss_ratio(LossReason r) const;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::vector<RunMetrics>> runs;  // parallel to rows
};

ExperimentResult run_experiment(std::shared_ptr<const WorldMap> map, const ExperimentGrid& grid);

std::string results_to_csv(const std::vector<ResultRow>& rows);
std::string results_to_json(const std::vector<ResultRow>& rows);

}  // namespace pandemic

#endif  // PANDEMIC_HARNESS_HPP_
