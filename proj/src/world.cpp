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

#include "pandemic/world.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "standard_map_data.hpp"

namespace pandemic {

namespace {

constexpr std::array<std::string_view, kNumColors> kColorNames = {
    "blue", "yellow", "red", "black"};
constexpr std::array<std::string_view, 4> kRoleNames = {
    "OperationsExpert", "Researcher", "Medic", "Scientist"};

}  // namespace

std::string_view to_string(Color c) { return kColorNames[index(c)]; }

Color parse_color(std::string_view name) {
  for (int i = 0; i < kNumColors; ++i) {
    if (kColorNames[i] == name) return static_cast<Color>(i);
  }
  throw Error("unknown disease color '" + std::string(name) + "'");
}

std::string_view to_string(Role r) { return kRoleNames[static_cast<int>(r)]; }

Role parse_role(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kRoleNames[i] == name) return static_cast<Role>(i);
  }
  // Short aliases for the CLI.
  if (name == "ops") return Role::kOperationsExpert;
  if (name == "researcher") return Role::kResearcher;
  if (name == "medic") return Role::kMedic;
  if (name == "scientist") return Role::kScientist;
  throw Error("unknown role '" + std::string(name) + "'");
}

WorldMap::WorldMap(std::vector<City> cities,
                   std::vector<std::pair<CityId, CityId>> directed_edges,
                   CityId start)
    : cities_(std::move(cities)), start_(start) {
  const int n = num_cities();
  if (n == 0) throw Error("map has no cities");
  if (n > kMaxCities) {
    throw Error("map has " + std::to_string(n) + " cities; at most " +
                std::to_string(kMaxCities) + " are supported");
  }
  {
    std::unordered_set<std::string> seen;
    for (const City& c : cities_) {
      if (!seen.insert(c.name).second) {
        throw Error("duplicate city name '" + c.name + "'");
      }
    }
  }
  if (start_ >= n) throw Error("start city out of range");

  adjacency_.assign(n, {});
  neighbor_sets_.assign(n, CardSet{});
  for (auto [a, b] : directed_edges) {
    if (a >= n || b >= n) throw Error("edge references unknown city id");
    if (a == b) throw Error("self-loop at '" + cities_[a].name + "'");
    if (neighbor_sets_[a].contains(b)) continue;
    neighbor_sets_[a].insert(b);
    adjacency_[a].push_back(b);
  }
  for (int a = 0; a < n; ++a) {
    for (CityId b : adjacency_[a]) {
      if (!neighbor_sets_[b].contains(static_cast<CityId>(a))) {
        throw Error("asymmetric edge '" + cities_[a].name + "' -> '" +
                    cities_[b].name + "' has no reverse");
      }
    }
    std::sort(adjacency_[a].begin(), adjacency_[a].end());
  }

  for (int c = 0; c < n; ++c) {
    color_sets_[index(cities_[c].color)].insert(static_cast<CityId>(c));
    all_.insert(static_cast<CityId>(c));
  }

  distance_.assign(n, {});
  for (int s = 0; s < n; ++s) {
    auto& row = distance_[s];
    row.fill(0xff);
    row[s] = 0;
    std::deque<CityId> queue{static_cast<CityId>(s)};
    while (!queue.empty()) {
      CityId c = queue.front();
      queue.pop_front();
      for (CityId nb : adjacency_[c]) {
        if (row[nb] == 0xff) {
          row[nb] = static_cast<std::uint8_t>(row[c] + 1);
          queue.push_back(nb);
        }
      }
    }
    for (int c = 0; c < n; ++c) {
      if (row[c] == 0xff) {
        throw Error("map is disconnected: no path from '" + cities_[s].name +
                    "' to '" + cities_[c].name + "'");
      }
    }
  }
}

std::optional<CityId> WorldMap::find(std::string_view name) const {
  for (int c = 0; c < num_cities(); ++c) {
    if (cities_[c].name == name) return static_cast<CityId>(c);
  }
  return std::nullopt;
}

CityId WorldMap::id(std::string_view name) const {
  auto c = find(name);
  if (!c) throw Error("unknown city '" + std::string(name) + "'");
  return *c;
}

std::shared_ptr<const WorldMap> load_map(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed map document: ") + e.what());
  }
  try {
    std::vector<City> cities;
    std::unordered_map<std::string, CityId> ids;
    for (const auto& c : doc.at("cities")) {
      std::string name = c.at("name").get<std::string>();
      Color color = parse_color(c.at("color").get<std::string>());
      if (ids.contains(name)) throw Error("duplicate city name '" + name + "'");
      if (cities.size() >= static_cast<std::size_t>(kMaxCities)) {
        throw Error("too many cities in map document");
      }
      ids.emplace(name, static_cast<CityId>(cities.size()));
      cities.push_back({std::move(name), color});
    }
    auto lookup = [&](const std::string& name) {
      auto it = ids.find(name);
      if (it == ids.end()) throw Error("edge references unknown city '" + name + "'");
      return it->second;
    };
    const bool directed = doc.value("directed", false);
    std::vector<std::pair<CityId, CityId>> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error("edge must be a [name, name] pair");
      CityId a = lookup(e[0].get<std::string>());
      CityId b = lookup(e[1].get<std::string>());
      edges.emplace_back(a, b);
      if (!directed) edges.emplace_back(b, a);
    }
    CityId start = lookup(doc.at("start").get<std::string>());
    auto map = std::make_shared<WorldMap>(std::move(cities), std::move(edges), start);
    if (doc.contains("id")) map->set_map_id(doc["id"].get<std::string>());
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed map document: ") + e.what());
  }
}

std::shared_ptr<const WorldMap> load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open map file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str());
}

std::shared_ptr<const WorldMap> standard_map() {
  static const std::shared_ptr<const WorldMap> map = [] {
    auto m = load_map(kStandardMapJson);
    std::const_pointer_cast<WorldMap>(m)->set_map_id("standard");
    return m;
  }();
  return map;
}

int walk_distance(const WorldMap& map, CityId a, CityId b) {
  return map.walk_distance(a, b);
}

}  // namespace pandemic
