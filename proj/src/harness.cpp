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

#include "pandemic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace pandemic {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSetupFormatVersion = 1;

std::string card_name(std::uint8_t card, const WorldMap& map) {
  return card == kEpidemicCard ? "EPIDEMIC" : map.name(card);
}

std::uint8_t card_id(const std::string& name, const WorldMap& map) {
  return name == "EPIDEMIC" ? kEpidemicCard : map.id(name);
}

std::string fixed(double v, int digits = 6) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// --- setups ----------------------------------------------------------------

SetupRecord make_setup(const WorldMap& map, std::span<const Role> roles, int epidemics,
                       std::uint64_t seed) {
  Rng rng(derive_seed({seed, 0x7365747570ULL}));
  SetupRecord r;
  r.seed = seed;
  r.map_id = map.map_id();
  r.deal = deal_setup(map, roles, epidemics, rng);
  return r;
}

GameState initial_state(std::shared_ptr<const WorldMap> map, const SetupRecord& setup,
                        std::uint64_t run_seed) {
  return start_game(std::move(map), setup.deal, run_seed);
}

std::string setups_to_json(const std::vector<SetupRecord>& setups, const WorldMap& map) {
  Json doc;
  doc["format"] = "pandemic-setups";
  doc["version"] = kSetupFormatVersion;
  doc["map"] = map.map_id();
  Json list = Json::array();
  for (const SetupRecord& r : setups) {
    Json j;
    j["seed"] = r.seed;
    Json roles = Json::array();
    for (Role role : r.deal.roles) roles.push_back(std::string(to_string(role)));
    j["roles"] = roles;
    j["epidemics"] = r.deal.epidemics;
    Json hands = Json::array();
    for (const auto& hand : r.deal.hands) {
      Json h = Json::array();
      for (CityId c : hand) h.push_back(map.name(c));
      hands.push_back(h);
    }
    j["hands"] = hands;
    Json deck = Json::array();
    for (std::uint8_t c : r.deal.player_deck) deck.push_back(card_name(c, map));
    j["player_deck"] = deck;
    j["partition_sizes"] = r.deal.partition_sizes;
    Json infection = Json::array();
    for (CityId c : r.deal.infection_deck) infection.push_back(map.name(c));
    j["infection_deck"] = infection;
    Json infected = Json::array();
    for (std::size_t i = 0; i < kSetupInfectionCubes.size() && i < r.deal.infection_deck.size();
         ++i) {
      infected.push_back(
          {{"city", map.name(r.deal.infection_deck[i])}, {"cubes", kSetupInfectionCubes[i]}});
    }
    j["infected"] = infected;
    if (r.profile) {
      j["profile"] = {{"runs", r.profile->runs},
                      {"wins", r.profile->wins},
                      {"mean_duration", r.profile->mean_duration}};
    }
    list.push_back(j);
  }
  doc["setups"] = list;
  return doc.dump(1) + "\n";
}

std::vector<SetupRecord> setups_from_json(std::string_view text, const WorldMap& map) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("setup file does not parse: ") + e.what());
  }
  if (doc.value("format", "") != "pandemic-setups") throw Error("not a setup file");
  if (doc.value("version", 0) != kSetupFormatVersion) {
    throw Error("unsupported setup file version");
  }
  const std::string map_id = doc.value("map", "");
  if (!map_id.empty() && !map.map_id().empty() && map_id != map.map_id()) {
    throw Error("setup file is for map '" + map_id + "', not '" + map.map_id() + "'");
  }
  std::vector<SetupRecord> out;
  try {
    for (const Json& j : doc.at("setups")) {
      SetupRecord r;
      r.seed = j.at("seed").get<std::uint64_t>();
      r.map_id = map_id;
      for (const auto& role : j.at("roles")) r.deal.roles.push_back(parse_role(role.get<std::string>()));
      r.deal.epidemics = j.at("epidemics").get<int>();
      for (const auto& hand : j.at("hands")) {
        std::vector<CityId> h;
        for (const auto& c : hand) h.push_back(map.id(c.get<std::string>()));
        r.deal.hands.push_back(h);
      }
      for (const auto& c : j.at("player_deck")) {
        r.deal.player_deck.push_back(card_id(c.get<std::string>(), map));
      }
      r.deal.partition_sizes = j.at("partition_sizes").get<std::vector<int>>();
      for (const auto& c : j.at("infection_deck")) {
        r.deal.infection_deck.push_back(map.id(c.get<std::string>()));
      }
      if (j.contains("profile")) {
        const Json& p = j["profile"];
        r.profile = SetupProfile{p.at("runs").get<int>(), p.at("wins").get<int>(),
                                 p.at("mean_duration").get<double>()};
      }
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed setup record: ") + e.what());
  }
  return out;
}

void write_setups(const std::filesystem::path& path, const std::vector<SetupRecord>& setups,
                  const WorldMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << setups_to_json(setups, map);
}

std::vector<SetupRecord> read_setups(const std::filesystem::path& path, const WorldMap& map) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return setups_from_json(buf.str(), map);
}

// --- metrics and play ------------------------------------------------------

ActionClass classify(ActionKind k) {
  if (is_move(k)) return ActionClass::kMove;
  switch (k) {
    case ActionKind::kTreatDisease: return ActionClass::kTreat;
    case ActionKind::kBuildStation: return ActionClass::kBuild;
    case ActionKind::kShareGive:
    case ActionKind::kShareTake: return ActionClass::kShare;
    case ActionKind::kDiscoverCure: return ActionClass::kCure;
    default: return ActionClass::kPass;
  }
}

std::string_view to_string(ActionClass c) {
  constexpr std::array<std::string_view, kNumActionClasses> names = {
      "move", "treat", "build", "share", "cure", "pass"};
  return names[static_cast<int>(c)];
}

int RunMetrics::total_actions() const {
  int t = 0;
  for (int a : actions) t += a;
  return t;
}

double RunMetrics::share_ratio() const {
  const int t = total_actions();
  return t > 0 ? static_cast<double>(actions[static_cast<int>(ActionClass::kShare)]) / t : 0.0;
}

RunMetrics collect_metrics(const GameState& s,
                           const std::array<int, kNumActionClasses>& actions) {
  RunMetrics m;
  m.won = s.status == Status::kWon;
  m.duration = s.turn_count;
  m.loss_reason = s.loss_reason;
  m.outbreaks = s.outbreaks;
  for (int c = 0; c < s.world().num_cities(); ++c) {
    for (Color t : kAllColors) {
      const int k = s.cubes[c][index(t)];
      if (k > 0) ++m.cube_histogram[k - 1];
    }
  }
  m.actions = actions;
  m.stations_built = s.stations.size() - 1;
  m.epidemics = s.epidemics_drawn;
  return m;
}

AgentFactory dp_factory() {
  return [] { return std::make_unique<DefaultPolicyAgent>(); };
}

AgentFactory rhea_factory(const RheaConfig& cfg) {
  return [cfg] { return std::make_unique<RheaAgent>(cfg); };
}

RunMetrics play_game(const GameState& initial, Agent& agent, std::uint64_t agent_seed,
                     EventLog* log) {
  GameState s = initial;
  Rng rng(agent_seed);
  const DiscardChooser chooser = discard_chooser(rng);
  std::array<int, kNumActionClasses> actions{};
  auto apply = [&](const AtomicAction& a) {
    const AtomicAction& step = is_legal(s, a) ? a : AtomicAction::pass();
    apply_action(s, step, log);
    ++actions[static_cast<int>(classify(step.kind))];
  };
  while (s.ongoing()) {
    if (s.actions_left == 0) {
      end_turn(s, chooser, log);
      continue;
    }
    const int before = s.actions_left;
    for (const MacroAction& m : agent.decide(observe(s), rng)) {
      for (const AtomicAction& step : m.steps) {
        if (!s.ongoing() || s.actions_left == 0 || s.current_player != m.player) break;
        apply(step);
      }
    }
    if (s.ongoing() && s.actions_left == before) apply(AtomicAction::pass());
  }
  actions[static_cast<int>(ActionClass::kPass)] += s.actions_left;
  return collect_metrics(s, actions);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// --- profiling and selection -----------------------------------------------

std::vector<SetupRecord> generate_and_profile(std::shared_ptr<const WorldMap> map,
                                              const ProfileConfig& cfg,
                                              const AgentFactory& agent) {
  if (cfg.setups < 1 || cfg.runs < 1) throw Error("need at least one setup and one run");
  std::vector<SetupRecord> records(cfg.setups);
  parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
    SetupRecord r = make_setup(*map, cfg.roles, cfg.epidemics,
                               derive_seed({cfg.master_seed, static_cast<std::uint64_t>(i)}));
    SetupProfile p;
    long turns = 0;
    for (int run = 0; run < cfg.runs; ++run) {
      const auto rs = static_cast<std::uint64_t>(run);
      auto a = agent();
      RunMetrics m = play_game(initial_state(map, r, derive_seed({r.seed, rs})), *a,
                               derive_seed({r.seed, rs, 0x6167656e74ULL}));
      ++p.runs;
      p.wins += m.won ? 1 : 0;
      turns += m.duration;
    }
    p.mean_duration = static_cast<double>(turns) / p.runs;
    r.profile = p;
    records[i] = std::move(r);
  });
  return records;
}

std::vector<std::size_t> k_medoids(const std::vector<std::array<double, 2>>& points,
                                   std::size_t k, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (k == 0) return {};
  if (k >= n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = std::hypot(points[i][0] - points[j][0], points[i][1] - points[j][1]);
    }
  }
  auto total_cost = [&](const std::vector<std::size_t>& medoids) {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t m : medoids) best = std::min(best, d[i * n + m]);
      cost += best;
    }
    return cost;
  };

  Rng rng(seed);
  std::vector<std::size_t> medoids = {static_cast<std::size_t>(rng.uniform(n))};
  std::vector<bool> is_medoid(n, false);
  is_medoid[medoids[0]] = true;
  while (medoids.size() < k) {
    std::size_t far = n;
    double far_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_medoid[i]) continue;
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t m : medoids) nearest = std::min(nearest, d[i * n + m]);
      if (nearest > far_d) {
        far_d = nearest;
        far = i;
      }
    }
    medoids.push_back(far);
    is_medoid[far] = true;
  }

  double cost = total_cost(medoids);
  for (;;) {
    double best_cost = cost;
    std::size_t best_slot = k;
    std::size_t best_point = n;
    for (std::size_t slot = 0; slot < k; ++slot) {
      const std::size_t old = medoids[slot];
      for (std::size_t o = 0; o < n; ++o) {
        if (is_medoid[o]) continue;
        medoids[slot] = o;
        const double c = total_cost(medoids);
        if (c < best_cost - 1e-12) {
          best_cost = c;
          best_slot = slot;
          best_point = o;
        }
      }
      medoids[slot] = old;
    }
    if (best_slot == k) break;
    is_medoid[medoids[best_slot]] = false;
    medoids[best_slot] = best_point;
    is_medoid[best_point] = true;
    cost = best_cost;
  }
  std::sort(medoids.begin(), medoids.end());
  return medoids;
}

std::vector<std::size_t> candidate_pool(const std::vector<SetupRecord>& profiled,
                                        const SelectConfig& cfg) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < profiled.size(); ++i) {
    if (!profiled[i].profile) throw Error("setup " + std::to_string(i) + " has no profile");
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return profiled[a].profile->win_ratio() > profiled[b].profile->win_ratio();
  });
  const auto top = static_cast<std::size_t>(
      std::ceil(cfg.top_fraction * static_cast<double>(profiled.size())));
  order.resize(std::min(order.size(), top));
  std::erase_if(order, [&](std::size_t i) {
    return profiled[i].profile->win_ratio() < cfg.min_win_ratio;
  });
  return order;
}

std::vector<SetupRecord> select_testbeds(const std::vector<SetupRecord>& profiled,
                                         const SelectConfig& cfg) {
  const std::vector<std::size_t> pool = candidate_pool(profiled, cfg);
  std::vector<std::array<double, 2>> points;
  for (std::size_t i : pool) {
    const SetupProfile& p = *profiled[i].profile;
    points.push_back({p.win_ratio(), p.normalized_duration()});
  }
  std::vector<SetupRecord> out;
  for (std::size_t m : k_medoids(points, cfg.k, cfg.seed)) out.push_back(profiled[pool[m]]);
  return out;
}

// --- experiments -----------------------------------------------------------

std::string to_string(const Condition& c) {
  std::ostringstream out;
  out << "players=" << c.players << " epidemics=" << c.epidemics
      << " p_rand=" << (c.p_rand ? 1 : 0) << " d_rand=" << (c.d_rand ? 1 : 0);
  return out.str();
}

GameState condition_state(std::shared_ptr<const WorldMap> map, const SetupRecord& setup,
                          const Condition& cond, std::uint64_t run_seed) {
  const bool recorded = cond.players == static_cast<int>(setup.deal.roles.size()) &&
                        cond.epidemics == setup.deal.epidemics;
  Rng role_rng(derive_seed({run_seed, 0x726f6c6573ULL}));
  std::vector<Role> roles = recorded
                                ? setup.deal.roles
                                : std::vector<Role>(kDefaultRoleOrder.begin(),
                                                    kDefaultRoleOrder.begin() + cond.players);
  if (cond.players < kMaxPlayers) {
    std::array<Role, 4> pool = kAllRoles;
    role_rng.shuffle(std::span<Role>(pool));
    roles.assign(pool.begin(), pool.begin() + cond.players);
  } else if (cond.p_rand) {
    role_rng.shuffle(std::span<Role>(roles));
  }

  InitialDeal deal;
  if (recorded) {
    deal = setup.deal;
    deal.roles = roles;
  } else {
    Rng deal_rng(derive_seed({setup.seed, static_cast<std::uint64_t>(cond.players),
                              static_cast<std::uint64_t>(cond.epidemics)}));
    deal = deal_setup(*map, roles, cond.epidemics, deal_rng);
  }
  GameState s = start_game(std::move(map), deal, run_seed);
  if (cond.d_rand) {
    const Rng stream = s.rng;
    s = determinize(observe(s), derive_seed({run_seed, 0x6465636b73ULL}));
    s.rng = stream;
  }
  return s;
}

long ResultRow::total_actions() const {
  long t = 0;
  for (long a : action_totals) t += a;
  return t;
}

double ResultRow::action_ratio(ActionClass c) const {
  const long t = total_actions();
  return t > 0 ? static_cast<double>(action_totals[static_cast<int>(c)]) / t : 0.0;
}

double ResultRow::loss_ratio(LossReason r) const {
  const int lost = runs - wins;
  return lost > 0 ? static_cast<double>(losses[static_cast<int>(r)]) / lost : 0.0;
}

ExperimentResult run_experiment(std::shared_ptr<const WorldMap> map, const ExperimentGrid& grid) {
  if (grid.runs < 1) throw Error("need at least one run per cell");
  struct Variant {
    std::string agent;
    std::string fitness;
    AgentFactory factory;
  };
  std::vector<Variant> variants;
  for (const std::string& a : grid.agents) {
    if (a == "dp") {
      variants.push_back({"dp", "-", dp_factory()});
    } else if (a == "rhea") {
      for (const FitnessSpec& f : grid.fitness) {
        RheaConfig cfg = grid.rhea;
        cfg.fitness = f;
        variants.push_back({"rhea", to_string(f), rhea_factory(cfg)});
      }
    } else {
      throw Error("unknown agent '" + a + "'");
    }
  }
  std::vector<Condition> conditions;
  for (bool p : grid.p_rand) {
    for (bool d : grid.d_rand) {
      for (int e : grid.epidemics) {
        for (int n : grid.players) conditions.push_back({p, d, e, n});
      }
    }
  }

  const std::size_t V = variants.size();
  const std::size_t S = grid.setups.size();
  const std::size_t C = conditions.size();
  const auto R = static_cast<std::size_t>(grid.runs);
  std::vector<RunMetrics> metrics(V * S * C * R);
  parallel_for(metrics.size(), grid.threads, [&](std::size_t job) {
    const std::size_t r = job % R;
    const std::size_t c = (job / R) % C;
    const std::size_t s = (job / (R * C)) % S;
    const std::size_t v = job / (R * C * S);
    const SetupRecord& setup = grid.setups[s];
    const std::uint64_t run_seed = derive_seed({grid.master_seed, setup.seed, c, r});
    GameState start = condition_state(map, setup, conditions[c], run_seed);
    auto agent = variants[v].factory();
    metrics[job] = play_game(start, *agent, derive_seed({run_seed, 0x6167656e74ULL}));
  });

  ExperimentResult result;
  for (std::size_t v = 0; v < V; ++v) {
    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t c = 0; c < C; ++c) {
        ResultRow row;
        row.agent = variants[v].agent;
        row.fitness = variants[v].fitness;
        row.setup = s;
        row.setup_seed = grid.setups[s].seed;
        row.condition = conditions[c];
        std::vector<RunMetrics> runs;
        long turns = 0;
        long outbreaks = 0;
        long stations = 0;
        std::array<long, 3> cubes{};
        for (std::size_t r = 0; r < R; ++r) {
          const RunMetrics& m = metrics[((v * S + s) * C + c) * R + r];
          runs.push_back(m);
          ++row.runs;
          if (m.won) {
            ++row.wins;
          } else {
            ++row.losses[static_cast<int>(m.loss_reason)];
          }
          turns += m.duration;
          outbreaks += m.outbreaks;
          stations += m.stations_built;
          for (int k = 0; k < 3; ++k) cubes[k] += m.cube_histogram[k];
          for (int a = 0; a < kNumActionClasses; ++a) row.action_totals[a] += m.actions[a];
        }
        const double n = static_cast<double>(row.runs);
        row.mean_duration = turns / n;
        row.mean_outbreaks = outbreaks / n;
        row.mean_stations_built = stations / n;
        for (int k = 0; k < 3; ++k) row.mean_cubes[k] = cubes[k] / n;
        result.rows.push_back(row);
        result.runs.push_back(std::move(runs));
      }
    }
  }
  for (ResultRow& row : result.rows) {
    if (row.agent == "dp") continue;
    for (const ResultRow& base : result.rows) {
      if (base.agent == "dp" && base.setup == row.setup && base.condition == row.condition) {
        if (base.wins > 0) {
          row.improvement_over_dp = (row.win_ratio() - base.win_ratio()) / base.win_ratio();
        }
        break;
      }
    }
  }
  return result;
}

namespace {

constexpr std::array<const char*, 30> kColumns = {
    "agent",         "fitness",       "setup",         "setup_seed",    "players",
    "epidemics",     "p_rand",        "d_rand",        "runs",          "wins",
    "win_ratio",     "mean_duration", "mean_duration_norm", "loss_outbreaks", "loss_cubes",
    "loss_deck",     "mean_outbreaks", "cubes_1",      "cubes_2",       "cubes_3",
    "n_move",        "n_treat",       "n_build",       "n_share",       "n_cure",
    "n_pass",        "share_ratio",   "treat_ratio",   "mean_stations_built",
    "improvement_over_dp"};

std::vector<std::string> row_fields(const ResultRow& r) {
  std::vector<std::string> f = {
      r.agent,
      r.fitness,
      std::to_string(r.setup),
      std::to_string(r.setup_seed),
      std::to_string(r.condition.players),
      std::to_string(r.condition.epidemics),
      std::to_string(r.condition.p_rand ? 1 : 0),
      std::to_string(r.condition.d_rand ? 1 : 0),
      std::to_string(r.runs),
      std::to_string(r.wins),
      fixed(r.win_ratio()),
      fixed(r.mean_duration),
      fixed(r.mean_duration / kMaxGameTurns),
      fixed(r.loss_ratio(LossReason::kOutbreakLimit)),
      fixed(r.loss_ratio(LossReason::kCubesExhausted)),
      fixed(r.loss_ratio(LossReason::kDeckExhausted)),
      fixed(r.mean_outbreaks),
      fixed(r.mean_cubes[0]),
      fixed(r.mean_cubes[1]),
      fixed(r.mean_cubes[2]),
  };
  for (long a : r.action_totals) f.push_back(std::to_string(a));
  f.push_back(fixed(r.action_ratio(ActionClass::kShare)));
  f.push_back(fixed(r.action_ratio(ActionClass::kTreat)));
  f.push_back(fixed(r.mean_stations_built));
  f.push_back(r.improvement_over_dp ? fixed(*r.improvement_over_dp) : "");
  return f;
}

}  // namespace

std::string results_to_csv(const std::vector<ResultRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i > 0) out += ',';
    out += kColumns[i];
  }
  out += '\n';
  for (const ResultRow& r : rows) {
    const auto fields = row_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(fields[i]);
    }
    out += '\n';
  }
  return out;
}

std::string results_to_json(const std::vector<ResultRow>& rows) {
  // Numbers go through the same fixed formatting as the CSV so that both
  // outputs are stable across runs and platforms.
  Json list = Json::array();
  for (const ResultRow& r : rows) {
    const auto fields = row_fields(r);
    Json j;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& v = fields[i];
      if (i < 2) {
        j[kColumns[i]] = v;
      } else if (v.empty()) {
        j[kColumns[i]] = nullptr;
      } else {
        j[kColumns[i]] = Json::parse(v == "nan" ? "null" : v);
      }
    }
    list.push_back(j);
  }
  Json doc;
  doc["format"] = "pandemic-results";
  doc["version"] = 1;
  doc["rows"] = list;
  return doc.dump(1) + "\n";
}

}  // namespace pandemic
