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

// Balanced collections with strictly positive weights, and the level-set
// criterion for membership in the u-prenucleolus: x is in it iff every
// D(alpha, x) = {S in A* : u_S(e(S, x)) >= alpha} is balanced.

#ifndef UCOOP_KOHLBERG_H_
#define UCOOP_KOHLBERG_H_

#include <optional>
#include <vector>

#include "ucoop/core.h"
#include "ucoop/game.h"
#include "ucoop/rational.h"
#include "ucoop/utility.h"

namespace ucoop {

// Levels of a general utility closer than this are merged.
inline constexpr double kLevelTolerance = 1e-9;

struct BalancedCertificate {
  // Strictly positive, sum_S weight_S chi_S = chi_N exactly.
  CoalitionWeights weights;
};

struct BalanceCheck {
  bool balanced = false;
  // Set when balanced.
  BalancedCertificate certificate;
  // Set when not balanced: players in no member, and members that receive
  // weight zero in every nonnegative balancing system.
  std::vector<int> uncovered_players;
  std::vector<Coalition> forced_zero;
};

// Solves
//   max sum eps_S  s.t.  eps_S <= lambda_S, 0 <= eps_S <= 1,
//                        sum lambda_S chi_S = mu chi_N, lambda, mu >= 0,
// whose optimum is |collection| exactly when strictly positive balancing
// weights exist; they are then lambda / mu. Throws
// TrivialCoalitionInCollection for ∅ or N.
BalanceCheck CheckBalanced(int n, const std::vector<Coalition>& collection);

std::optional<BalancedCertificate> IsBalancedCollection(
    int n, const std::vector<Coalition>& collection);

struct LevelReport {
  Rational alpha;
  std::vector<Coalition> coalitions;
  BalanceCheck check;
};

struct KohlbergReport {
  bool verdict = false;
  bool is_preimputation = true;
  // One entry per distinct u-excess level, in decreasing order.
  std::vector<LevelReport> levels;
  std::optional<int> first_failing_level;
  bool approximate = false;
};

KohlbergReport KohlbergCheck(const Game& game, const UtilityFamily& u,
                             const Payoff& x);

}  // namespace ucoop

#endif  // UCOOP_KOHLBERG_H_
