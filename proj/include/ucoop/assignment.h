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

// Assignment games. Buyers are players 0..m-1 and sellers m..m+m'-1; the
// worth of a coalition is its best buyer-seller matching under the profit
// matrix.

#ifndef UCOOP_ASSIGNMENT_H_
#define UCOOP_ASSIGNMENT_H_

#include <utility>
#include <vector>

#include "ucoop/game.h"
#include "ucoop/rational.h"

namespace ucoop {

// Both sides at most this large are matched by enumeration.
inline constexpr int kBruteForceSide = 6;

class AssignmentSpec {
 public:
  // Throws InvalidGame on a ragged or empty matrix or a negative profit.
  explicit AssignmentSpec(std::vector<std::vector<Rational>> profits);

  int buyers() const { return static_cast<int>(profits_.size()); }
  int sellers() const { return static_cast<int>(profits_.front().size()); }
  int num_players() const { return buyers() + sellers(); }
  const Rational& profit(int buyer, int seller) const {
    return profits_[buyer][seller];
  }
  const std::vector<std::vector<Rational>>& profits() const { return profits_; }

  int BuyerPlayer(int buyer) const { return buyer; }
  int SellerPlayer(int seller) const { return buyers() + seller; }
  Coalition AllBuyers() const;
  Coalition AllSellers() const;

 private:
  std::vector<std::vector<Rational>> profits_;
};

struct Matching {
  // (buyer, seller) index pairs, sorted.
  std::vector<std::pair<int, int>> pairs;
  Rational value;
};

enum class MatchingMethod { kAuto, kBruteForce, kHungarian };

// A maximum-profit matching between the given buyer and seller indices.
// Among optimal matchings the lexicographically smallest pair list wins.
Matching MaxWeightMatching(const AssignmentSpec& spec,
                           const std::vector<int>& buyers,
                           const std::vector<int>& sellers,
                           MatchingMethod method = MatchingMethod::kAuto);

// Worth of a player coalition.
Rational CoalitionWorth(const AssignmentSpec& spec, Coalition s,
                        MatchingMethod method = MatchingMethod::kAuto);

// Full cooperation game. Throws TooManyPlayers when m + m' exceeds
// kMaxPlayers, or kMaxFullPlayers since every coalition is materialized.
Game BuildGame(const AssignmentSpec& spec);

struct AssignmentStructureReport {
  // u-essential under the reciprocal percapita utility, canonical order.
  std::vector<Coalition> u_essential;
  // Buyer-seller pairs among them.
  std::vector<std::pair<int, int>> essential_pairs;
  // Members that are neither singletons nor buyer-seller pairs.
  std::vector<Coalition> violations;
  int bound = 0;
  bool inclusion_holds = false;
  bool bound_holds = false;
};

// True for a buyer-seller pair.
bool IsMixedPair(const AssignmentSpec& spec, Coalition s);

AssignmentStructureReport VerifyEssentialStructure(const AssignmentSpec& spec);

}  // namespace ucoop

#endif  // UCOOP_ASSIGNMENT_H_
