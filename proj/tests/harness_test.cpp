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
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "pandemic/harness.hpp"
#include "test_support.hpp"

using namespace pandemic;
using namespace pandemic::testing;

namespace {

const std::vector<Role> kFour(kDefaultRoleOrder.begin(), kDefaultRoleOrder.end());

double dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double medoid_cost(const std::vector<std::array<double, 2>>& pts,
                   const std::vector<std::size_t>& medoids) {
  double total = 0;
  for (const auto& p : pts) {
    double best = INFINITY;
    for (std::size_t m : medoids) best = std::min(best, dist(p, pts[m]));
    total += best;
  }
  return total;
}

std::vector<SetupRecord> small_pool(int n) {
  auto map = standard_map();
  std::vector<SetupRecord> out;
  for (int i = 0; i < n; ++i) out.push_back(make_setup(*map, kFour, 4, 100 + i));
  return out;
}

}  // namespace

TEST_CASE("setup records round-trip through JSON") {
  auto map = standard_map();
  auto setups = small_pool(5);
  setups[1].profile = SetupProfile{30, 4, 17.5};
  setups[3].deal = make_setup(*map, std::vector<Role>{Role::kMedic, Role::kScientist}, 6, 9).deal;
  const std::string text = setups_to_json(setups, *map);
  auto back = setups_from_json(text, *map);
  CHECK(back == setups);
  CHECK(setups_to_json(back, *map) == text);

  const auto path = std::filesystem::temp_directory_path() / "pandemic_setups_test.json";
  write_setups(path, setups, *map);
  CHECK(read_setups(path, *map) == setups);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(setups_from_json("{}", *map), Error);
  CHECK_THROWS_AS(setups_from_json("not json", *map), Error);
  CHECK_THROWS_AS(read_setups("/nonexistent/file.json", *map), Error);
}

TEST_CASE("a setup replays to the same initial state") {
  auto map = standard_map();
  SetupRecord r = make_setup(*map, kFour, 5, 42);
  CHECK(make_setup(*map, kFour, 5, 42) == r);
  GameState a = initial_state(map, r, 7);
  GameState b = initial_state(map, setups_from_json(setups_to_json({r}, *map), *map)[0], 7);
  CHECK(a == b);
  CHECK(check_invariants(a) == "");
  // The run seed only drives in-game shuffles.
  GameState c = initial_state(map, r, 8);
  CHECK(c.players == a.players);
  CHECK(c.player_deck == a.player_deck);
  CHECK(c.infection == a.infection);
}

TEST_CASE("action classes") {
  CHECK(classify(ActionKind::kDriveFerry) == ActionClass::kMove);
  CHECK(classify(ActionKind::kOpsExpertFlight) == ActionClass::kMove);
  CHECK(classify(ActionKind::kShareGive) == ActionClass::kShare);
  CHECK(classify(ActionKind::kShareTake) == ActionClass::kShare);
  CHECK(classify(ActionKind::kDiscoverCure) == ActionClass::kCure);
  CHECK(classify(ActionKind::kPass) == ActionClass::kPass);
  CHECK(to_string(ActionClass::kTreat) == "treat");
}

TEST_CASE("play_game accounts for every action") {
  auto map = standard_map();
  auto setups = small_pool(4);
  for (std::size_t i = 0; i < setups.size(); ++i) {
    for (const AgentFactory& f : {dp_factory(), rhea_factory(RheaConfig{5, 5, 2})}) {
      auto agent = f();
      GameState s = initial_state(map, setups[i], i);
      EventLog log;
      RunMetrics m = play_game(s, *agent, 3, &log);
      CHECK(m.total_actions() == 4 * m.duration);
      CHECK(m.duration >= 1);
      CHECK(m.won == (m.loss_reason == LossReason::kNone));
      CHECK(m.outbreaks <= kOutbreakLimit);
      int logged = 0;
      for (const auto& e : log.events()) logged += e.kind == EventKind::kAction;
      CHECK(logged <= m.total_actions());
      auto again = f();
      CHECK(play_game(s, *again, 3) == m);
    }
  }
}

TEST_CASE("profiling is deterministic and thread-count independent") {
  auto map = standard_map();
  ProfileConfig cfg;
  cfg.setups = 12;
  cfg.runs = 4;
  cfg.threads = 1;
  auto one = generate_and_profile(map, cfg);
  cfg.threads = 4;
  auto four = generate_and_profile(map, cfg);
  CHECK(one == four);
  REQUIRE(one.size() == 12);
  for (const auto& r : one) {
    REQUIRE(r.profile);
    CHECK(r.profile->runs == 4);
    CHECK(r.profile->wins <= 4);
    CHECK(r.profile->mean_duration > 0);
  }
  cfg.master_seed = 2;
  CHECK_FALSE(generate_and_profile(map, cfg) == one);
}

TEST_CASE("a setup with too few cards of each color never wins") {
  // Two cities per color: no hand can ever hold a cure's worth of cards.
  std::vector<std::pair<std::string, Color>> cities;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 8; ++i) {
    cities.emplace_back("M" + std::to_string(i), kAllColors[i % 4]);
    if (i > 0) edges.emplace_back(i - 1, i);
  }
  auto map = make_map(cities, edges);
  ProfileConfig cfg;
  cfg.setups = 6;
  cfg.runs = 5;
  cfg.roles = {Role::kMedic, Role::kScientist};
  cfg.epidemics = 2;
  auto profiled = generate_and_profile(map, cfg);
  for (const auto& r : profiled) CHECK(r.profile->wins == 0);
  CHECK(candidate_pool(profiled, SelectConfig{}).empty());
  CHECK(select_testbeds(profiled, SelectConfig{}).empty());
}

TEST_CASE("k-medoids") {
  SUBCASE("k equal to n returns everything") {
    std::vector<std::array<double, 2>> pts = {{0, 0}, {1, 1}, {0.5, 0.2}};
    CHECK(k_medoids(pts, 3, 1) == std::vector<std::size_t>{0, 1, 2});
    CHECK(k_medoids(pts, 5, 1) == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("two tight pairs") {
    std::vector<std::array<double, 2>> pts = {{0, 0}, {0.01, 0}, {1, 1}, {1, 0.99}};
    auto m = k_medoids(pts, 2, 3);
    REQUIRE(m.size() == 2);
    CHECK(m[0] <= 1);
    CHECK(m[1] >= 2);
  }
  SUBCASE("matches exhaustive search on small sets") {
    Rng rng(9);
    int optimal = 0;
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::array<double, 2>> pts;
      for (int i = 0; i < 9; ++i) pts.push_back({rng.uniform_real(), rng.uniform_real()});
      auto m = k_medoids(pts, 3, trial);
      REQUIRE(m.size() == 3);
      CHECK(std::set<std::size_t>(m.begin(), m.end()).size() == 3);
      CHECK(std::is_sorted(m.begin(), m.end()));
      double best = INFINITY;
      for (std::size_t a = 0; a < 9; ++a)
        for (std::size_t b = a + 1; b < 9; ++b)
          for (std::size_t c = b + 1; c < 9; ++c) best = std::min(best, medoid_cost(pts, {a, b, c}));
      const double got = medoid_cost(pts, m);
      CHECK(got >= best - 1e-12);
      // PAM ends in a local optimum: no single swap improves it.
      for (std::size_t slot = 0; slot < 3; ++slot) {
        for (std::size_t o = 0; o < 9; ++o) {
          if (std::find(m.begin(), m.end(), o) != m.end()) continue;
          auto swapped = m;
          swapped[slot] = o;
          CHECK(medoid_cost(pts, swapped) >= got - 1e-12);
        }
      }
      optimal += got <= best + 1e-12;
    }
    CHECK(optimal >= 30);
  }
}

TEST_CASE("candidate pool and testbed selection") {
  auto setups = small_pool(40);
  for (std::size_t i = 0; i < setups.size(); ++i) {
    setups[i].profile = SetupProfile{30, static_cast<int>(i % 10), 10.0 + i % 7};
  }
  SelectConfig cfg;
  cfg.k = 2;
  auto pool = candidate_pool(setups, cfg);
  REQUIRE(pool.size() == 4);  // top 10% of 40
  for (std::size_t i : pool) CHECK(setups[i].profile->wins == 9);
  auto picked = select_testbeds(setups, cfg);
  CHECK(picked.size() == 2);
  cfg.k = 10;
  CHECK(select_testbeds(setups, cfg).size() == 4);
  cfg.min_win_ratio = 0.5;
  CHECK(candidate_pool(setups, cfg).empty());
}

TEST_CASE("condition states") {
  auto map = standard_map();
  SetupRecord r = make_setup(*map, kFour, 4, 5);
  SUBCASE("no randomization replays the recorded deal") {
    CHECK(condition_state(map, r, Condition{}, 9) == initial_state(map, r, 9));
  }
  SUBCASE("player randomization permutes roles only") {
    std::map<Role, int> first;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      GameState s = condition_state(map, r, Condition{true, false, 4, 4}, seed);
      GameState base = initial_state(map, r, seed);
      for (int p = 0; p < 4; ++p) CHECK(s.players[p].hand == base.players[p].hand);
      CHECK(s.player_deck == base.player_deck);
      std::set<Role> roles;
      for (int p = 0; p < 4; ++p) roles.insert(s.players[p].role);
      CHECK(roles.size() == 4);
      first[s.players[0].role]++;
    }
    CHECK(first.size() == 4);
    for (const auto& [role, c] : first) CHECK(std::abs(c - 100) < 4 * std::sqrt(75.0));
  }
  SUBCASE("deck randomization keeps hands and board") {
    GameState s = condition_state(map, r, Condition{false, true, 4, 4}, 3);
    GameState base = initial_state(map, r, 3);
    CHECK(s.players == base.players);
    CHECK(s.cubes == base.cubes);
    CHECK(s.infection.discard == base.infection.discard);
    CHECK(observe(s) == observe(base));
    CHECK_FALSE(s.player_deck == base.player_deck);
    CHECK(check_invariants(s) == "");
  }
  SUBCASE("two players get two distinct random roles") {
    std::map<Role, int> seen;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      GameState s = condition_state(map, r, Condition{false, false, 4, 2}, seed);
      REQUIRE(s.num_players == 2);
      CHECK(s.players[0].role != s.players[1].role);
      seen[s.players[0].role]++;
      seen[s.players[1].role]++;
      CHECK(s.player_deck.size == 48);
    }
    CHECK(seen.size() == 4);
    for (const auto& [role, c] : seen) CHECK(std::abs(c - 200) < 4 * std::sqrt(200 * 0.75));
  }
  SUBCASE("six epidemics give six partitions") {
    GameState s = condition_state(map, r, Condition{false, false, 6, 4}, 1);
    CHECK(s.player_deck.partition_sizes.size() == 6);
    CHECK(s.player_deck.size == 44 - 8 + 6 + 4);
    CHECK(condition_state(map, r, Condition{false, false, 6, 4}, 2).players ==
          s.players);  // same derived deal for every run
  }
}

TEST_CASE("experiment grid") {
  auto map = standard_map();
  ExperimentGrid grid;
  grid.setups = small_pool(2);
  grid.runs = 3;
  grid.rhea = RheaConfig{5, 4, 2};
  grid.fitness = {parse_fitness("f_b"), parse_fitness("p:avg(f_oa,f_cm)")};
  grid.p_rand = {false, true};
  grid.threads = 1;
  ExperimentResult res = run_experiment(map, grid);
  REQUIRE(res.rows.size() == 3 * 2 * 2);
  REQUIRE(res.runs.size() == res.rows.size());
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const ResultRow& row = res.rows[i];
    CHECK(row.runs == 3);
    CHECK(res.runs[i].size() == 3);
    int wins = 0;
    long actions = 0;
    int turns = 0;
    for (const RunMetrics& m : res.runs[i]) {
      wins += m.won;
      actions += m.total_actions();
      turns += m.duration;
    }
    CHECK(wins == row.wins);
    CHECK(actions == row.total_actions());
    CHECK(actions == 4L * turns);
    CHECK(row.mean_duration == doctest::Approx(turns / 3.0));
    int losses = 0;
    for (int r = 1; r < 4; ++r) losses += row.losses[r];
    CHECK(losses + wins == 3);
    double ratio_sum = 0;
    for (auto r : {LossReason::kOutbreakLimit, LossReason::kCubesExhausted, LossReason::kDeckExhausted})
      ratio_sum += row.loss_ratio(r);
    if (losses > 0) CHECK(ratio_sum == doctest::Approx(1.0));
    if (row.agent == "dp") {
      CHECK(row.fitness == "-");
      CHECK_FALSE(row.improvement_over_dp);
    }
  }
  CHECK(res.rows[0].agent == "dp");
  CHECK(res.rows[4].fitness == "f_b");
  CHECK(res.rows[8].fitness == "p:avg(f_oa,f_cm)");
  // Improvement is relative to the matching default-policy row.
  for (std::size_t i = 4; i < res.rows.size(); ++i) {
    const ResultRow& dp = res.rows[i % 4];
    if (dp.wins == 0) {
      CHECK_FALSE(res.rows[i].improvement_over_dp);
    } else {
      REQUIRE(res.rows[i].improvement_over_dp);
      CHECK(*res.rows[i].improvement_over_dp ==
            doctest::Approx(res.rows[i].win_ratio() / dp.win_ratio() - 1.0));
    }
  }

  grid.threads = 3;
  ExperimentResult again = run_experiment(map, grid);
  CHECK(results_to_csv(again.rows) == results_to_csv(res.rows));
  CHECK(results_to_json(again.rows) == results_to_json(res.rows));
  const std::string csv = results_to_csv(res.rows);
  CHECK(csv.starts_with("agent,fitness,setup,"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  CHECK(csv.find("\"p:avg(f_oa,f_cm)\"") != std::string::npos);
}

TEST_CASE("parallel_for visits every index once") {
  for (unsigned threads : {1u, 2u, 4u, 0u}) {
    std::vector<int> hits(257, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  parallel_for(0, 4, [](std::size_t) { FAIL("called on empty range"); });
}
