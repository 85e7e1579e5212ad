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

#ifndef PANDEMIC_WORLD_HPP_
#define PANDEMIC_WORLD_HPP_

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pandemic/common.hpp"

namespace pandemic {

struct City {
  std::string name;
  Color color;
};

// Immutable board: cities, colors and the drive/ferry graph. All-pairs walk
// distances are computed once at construction.
class WorldMap {
 public:
  // Validates and builds a map. Throws Error naming the offending city or
  // edge when the graph is asymmetric, reflexive, disconnected, or has
  // duplicate names.
  WorldMap(std::vector<City> cities,
           std::vector<std::pair<CityId, CityId>> directed_edges,
           CityId start);

  int num_cities() const { return static_cast<int>(cities_.size()); }
  const City& city(CityId c) const { return cities_[c]; }
  const std::string& name(CityId c) const { return cities_[c].name; }
  Color color(CityId c) const { return cities_[c].color; }
  CityId start() const { return start_; }

  std::span<const CityId> neighbors(CityId c) const { return adjacency_[c]; }
  CardSet neighbor_set(CityId c) const { return neighbor_sets_[c]; }
  bool adjacent(CityId a, CityId b) const { return neighbor_sets_[a].contains(b); }

  // All cities of one color, as a card mask.
  CardSet color_set(Color t) const { return color_sets_[index(t)]; }
  CardSet all_cities() const { return all_; }

  int walk_distance(CityId a, CityId b) const { return distance_[a][b]; }

  std::optional<CityId> find(std::string_view name) const;
  // Like find() but throws Error for an unknown name.
  CityId id(std::string_view name) const;

  // Optional label for the map (e.g. "standard"); used in setup records.
  const std::string& map_id() const { return map_id_; }
  void set_map_id(std::string id) { map_id_ = std::move(id); }

 private:
  std::vector<City> cities_;
  std::vector<std::vector<CityId>> adjacency_;
  std::vector<CardSet> neighbor_sets_;
  std::array<CardSet, kNumColors> color_sets_{};
  CardSet all_;
  std::vector<std::array<std::uint8_t, kMaxCities>> distance_;
  CityId start_;
  std::string map_id_;
};

// Parses a map document:
//   {"cities": [{"name": ..., "color": ...}], "edges": [[a, b]], "start": a}
// Edges listed once are taken as undirected unless the document sets
// "directed": true, in which case every edge must appear in both directions.
std::shared_ptr<const WorldMap> load_map(std::string_view json_text);
std::shared_ptr<const WorldMap> load_map_file(const std::filesystem::path& path);

// The shipped 48-city board, starting in Atlanta.
std::shared_ptr<const WorldMap> standard_map();

int walk_distance(const WorldMap& map, CityId a, CityId b);

}  // namespace pandemic

#endif  // PANDEMIC_WORLD_HPP_
