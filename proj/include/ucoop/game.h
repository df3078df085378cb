// Copyright 2026 The ucoop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// TU-games with restricted cooperation over at most 62 players.

#ifndef UCOOP_GAME_H_
#define UCOOP_GAME_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ucoop/rational.h"

namespace ucoop {

inline constexpr int kMaxPlayers = 62;
// A full family is materialized, so P(N) is capped well below kMaxPlayers.
inline constexpr int kMaxFullPlayers = 20;

// Set of players as a bitmask; player i is bit i (0-based).
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t mask) : mask_(mask) {}

  static Coalition Of(std::initializer_list<int> players);
  static Coalition FromMembers(std::span<const int> players);
  static constexpr Coalition Grand(int n) {
    return Coalition(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool Contains(int player) const { return (mask_ >> player) & 1; }
  constexpr bool IsSubsetOf(Coalition other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool Intersects(Coalition other) const {
    return (mask_ & other.mask_) != 0;
  }
  constexpr int Lowest() const { return std::countr_zero(mask_); }

  constexpr Coalition operator|(Coalition o) const {
    return Coalition(mask_ | o.mask_);
  }
  constexpr Coalition operator&(Coalition o) const {
    return Coalition(mask_ & o.mask_);
  }
  constexpr Coalition Minus(Coalition o) const {
    return Coalition(mask_ & ~o.mask_);
  }

  std::vector<int> Members() const;
  // "{1,2,4}" with 1-based player numbers.
  std::string ToString() const;

  constexpr auto operator<=>(const Coalition&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

// Size first, then lexicographic on the sorted member lists.
struct CanonicalOrder {
  bool operator()(Coalition a, Coalition b) const;
};

struct CoalitionHash {
  std::size_t operator()(Coalition c) const noexcept {
    return std::hash<std::uint64_t>{}(c.mask());
  }
};

void SortCanonical(std::vector<Coalition>& coalitions);

using Payoff = RationalVector;

// x(S).
Rational CoalitionSum(const Payoff& x, Coalition s);

// Characteristic vector of s over n players.
RationalVector Indicator(Coalition s, int n);

// A family containing the empty and the grand coalition.
class FeasibleFamily {
 public:
  // P(N). Throws InvalidGame for n outside [1, kMaxFullPlayers].
  static FeasibleFamily Full(int n);
  // ∅ and N are added if missing; duplicates are removed.
  static FeasibleFamily Restricted(int n, std::vector<Coalition> coalitions);

  int num_players() const { return n_; }
  Coalition grand() const { return Coalition::Grand(n_); }
  bool is_full() const { return full_; }
  // Every member including ∅ and N, in canonical order.
  const std::vector<Coalition>& coalitions() const { return all_; }
  // A* = family without ∅ and N, in canonical order.
  const std::vector<Coalition>& nontrivial() const { return nontrivial_; }
  bool Contains(Coalition s) const { return index_.count(s) > 0; }
  int IndexOf(Coalition s) const;

 private:
  FeasibleFamily(int n, std::vector<Coalition> coalitions, bool full);

  int n_ = 0;
  bool full_ = false;
  std::vector<Coalition> all_;
  std::vector<Coalition> nontrivial_;
  std::unordered_map<Coalition, int, CoalitionHash> index_;
};

class Game {
 public:
  // `values` must define exactly the members of `family` (v(∅) may be
  // omitted and must be 0 if present).
  Game(FeasibleFamily family,
       const std::unordered_map<Coalition, Rational, CoalitionHash>& values);

  // Full cooperation on n players; unlisted coalitions default to 0.
  static Game FullFromSparse(
      int n, const std::unordered_map<Coalition, Rational, CoalitionHash>&
                 values);

  int num_players() const { return family_.num_players(); }
  const FeasibleFamily& family() const { return family_; }
  Coalition grand() const { return family_.grand(); }

  // Throws UnknownCoalition if s is not feasible.
  const Rational& Value(Coalition s) const;
  const Rational& GrandValue() const { return Value(grand()); }
  // v(S) - x(S).
  Rational Excess(Coalition s, const Payoff& x) const;
  bool IsPreimputation(const Payoff& x) const;

  // The same values on a subfamily; ∅ and N are always kept.
  Game Restrict(const std::vector<Coalition>& keep) const;

 private:
  FeasibleFamily family_;
  std::vector<Rational> values_;
};

}  // namespace ucoop

#endif  // UCOOP_GAME_H_
