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

#ifndef PANDEMIC_COMMON_HPP_
#define PANDEMIC_COMMON_HPP_

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pandemic {

// Maps are limited to 64 cities so that any set of city cards fits in one
// machine word.
inline constexpr int kMaxCities = 64;
inline constexpr int kMaxPlayers = 4;
inline constexpr int kMaxEpidemics = 6;
inline constexpr int kNumColors = 4;
inline constexpr int kCubesPerColor = 24;
inline constexpr int kMaxCubesPerCity = 3;
inline constexpr int kActionsPerTurn = 4;
inline constexpr int kHandLimit = 7;
inline constexpr int kOutbreakLimit = 8;
inline constexpr int kMaxStations = 6;

using CityId = std::uint8_t;
inline constexpr CityId kNoCity = 0xff;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Color : std::uint8_t { kBlue = 0, kYellow = 1, kRed = 2, kBlack = 3 };

inline constexpr std::array<Color, kNumColors> kAllColors = {
    Color::kBlue, Color::kYellow, Color::kRed, Color::kBlack};

constexpr int index(Color c) { return static_cast<int>(c); }

std::string_view to_string(Color c);
Color parse_color(std::string_view name);

enum class Role : std::uint8_t {
  kOperationsExpert = 0,
  kResearcher = 1,
  kMedic = 2,
  kScientist = 3,
};

inline constexpr std::array<Role, 4> kAllRoles = {
    Role::kOperationsExpert, Role::kResearcher, Role::kMedic,
    Role::kScientist};

// Cards of one color needed to discover a cure.
constexpr int cure_cost(Role r) { return r == Role::kScientist ? 4 : 5; }

std::string_view to_string(Role r);
Role parse_role(std::string_view name);

// A set of city cards (or cities) over one map.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr CardSet of(CityId c) { return CardSet(bit(c)); }

  constexpr bool contains(CityId c) const { return (bits_ & bit(c)) != 0; }
  constexpr void insert(CityId c) { bits_ |= bit(c); }
  constexpr void erase(CityId c) { bits_ &= ~bit(c); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  // Lowest city id in the set; set must be nonempty.
  constexpr CityId first() const {
    return static_cast<CityId>(std::countr_zero(bits_));
  }

  constexpr bool is_subset_of(CardSet o) const {
    return (bits_ & ~o.bits_) == 0;
  }

  constexpr CardSet operator&(CardSet o) const { return CardSet(bits_ & o.bits_); }
  constexpr CardSet operator|(CardSet o) const { return CardSet(bits_ | o.bits_); }
  constexpr CardSet operator-(CardSet o) const { return CardSet(bits_ & ~o.bits_); }
  constexpr CardSet& operator|=(CardSet o) { bits_ |= o.bits_; return *this; }
  constexpr CardSet& operator&=(CardSet o) { bits_ &= o.bits_; return *this; }
  constexpr CardSet& operator-=(CardSet o) { bits_ &= ~o.bits_; return *this; }
  constexpr bool operator==(const CardSet&) const = default;

  class iterator {
   public:
    using value_type = CityId;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t bits) : bits_(bits) {}
    constexpr CityId operator*() const {
      return static_cast<CityId>(std::countr_zero(bits_));
    }
    constexpr iterator& operator++() { bits_ &= bits_ - 1; return *this; }
    constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t bits_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  static constexpr std::uint64_t bit(CityId c) { return std::uint64_t{1} << c; }
  std::uint64_t bits_ = 0;
};

// Fixed-capacity vector for small per-turn sequences; copies without touching
// the heap.
template <typename T, std::size_t N>
class StaticVector {
 public:
  constexpr StaticVector() = default;

  constexpr void push_back(const T& v) {
    if (size_ == N) throw std::length_error("StaticVector capacity exceeded");
    data_[size_++] = v;
  }
  constexpr void pop_back() { --size_; }
  constexpr void clear() { size_ = 0; }
  constexpr void resize(std::size_t n) { size_ = static_cast<std::uint8_t>(n); }

  constexpr std::size_t size() const { return size_; }
  constexpr bool empty() const { return size_ == 0; }
  static constexpr std::size_t capacity() { return N; }

  constexpr T& operator[](std::size_t i) { return data_[i]; }
  constexpr const T& operator[](std::size_t i) const { return data_[i]; }
  constexpr T& front() { return data_[0]; }
  constexpr const T& front() const { return data_[0]; }
  constexpr T& back() { return data_[size_ - 1]; }
  constexpr const T& back() const { return data_[size_ - 1]; }

  constexpr T* begin() { return data_.data(); }
  constexpr T* end() { return data_.data() + size_; }
  constexpr const T* begin() const { return data_.data(); }
  constexpr const T* end() const { return data_.data() + size_; }

  constexpr bool operator==(const StaticVector& o) const {
    if (size_ != o.size_) return false;
    for (std::size_t i = 0; i < size_; ++i) {
      if (!(data_[i] == o.data_[i])) return false;
    }
    return true;
  }

 private:
  std::array<T, N> data_{};
  std::uint8_t size_ = 0;
};

}  // namespace pandemic

#endif  // PANDEMIC_COMMON_HPP_
