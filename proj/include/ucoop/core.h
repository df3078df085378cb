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

// u-core membership and emptiness, u-balancedness, level sets
//   X(S, t) = {x : x(N) = v(N), u_S(v(S) - x(S)) <= t for S in S}
// and the minimax step shared by the least core and the lexicographic center.

#ifndef UCOOP_CORE_H_
#define UCOOP_CORE_H_

#include <optional>
#include <utility>
#include <vector>

#include "ucoop/game.h"
#include "ucoop/lp.h"
#include "ucoop/rational.h"
#include "ucoop/utility.h"

namespace ucoop {

// Absolute bisection tolerance on t for general utilities.
inline constexpr double kBisectionTolerance = 1e-9;

using CoalitionWeights = std::vector<std::pair<Coalition, Rational>>;

enum class CoreVerdict { kNonEmptyAllPreimputations, kEmpty, kDecidedByLp };

const char* ToString(CoreVerdict verdict);

struct CoreStatus {
  CoreVerdict verdict = CoreVerdict::kDecidedByLp;
  bool core_nonempty = false;
  // Set for kDecidedByLp.
  Rational lp_optimum;
  std::optional<Payoff> witness;
  // Optimal dual of the minimum-total program, nonzero entries only; the
  // grand coalition carries the multiplier of x(N) >= v(N).
  CoalitionWeights dual_weights;
  bool approximate = false;
};

struct BalancednessResult {
  bool balanced = false;
  // Set when decided by the weight program: its optimum, which is compared
  // with v(N), and the maximizing weights (nonzero entries only).
  std::optional<Rational> weighted_value;
  CoalitionWeights weights;
  bool approximate = false;
};

// x(N) = v(N).
LpRow PreimputationRow(const Game& game);

// Exact for affine utilities; general utilities compare the raw excess with
// u_S^{-1}(0) to within kInverseTolerance.
bool CoreMembership(const Game& game, const UtilityFamily& u, const Payoff& x);

CoreStatus CoreEmptiness(const Game& game, const UtilityFamily& u);

// Decided through the dual of the minimum-total program:
//   max lambda_N v(N) + sum_S lambda_S (v(S) - u_S^{-1}(0))
//   s.t. sum lambda_S chi_S + lambda_N chi_N = chi_N, lambda >= 0.
BalancednessResult UBalanced(const Game& game, const UtilityFamily& u);

class LevelSetPolytope {
 public:
  // X(coalitions, t) intersected with the `frozen` rows.
  static LevelSetPolytope Build(const Game& game, const UtilityFamily& u,
                                const std::vector<Coalition>& coalitions,
                                const Rational& t,
                                std::vector<LpRow> frozen = {});

  const Rational& threshold() const { return t_; }
  // Preimputation row, frozen rows, then one row per level constraint.
  const std::vector<LpRow>& rows() const { return rows_; }
  int num_players() const { return n_; }
  // True when t lies at or below the bottom of a general utility's range.
  bool below_range() const { return below_range_; }

  bool Contains(const Payoff& x) const;
  std::optional<Payoff> AnyPoint() const;
  bool IsEmpty() const { return !AnyPoint().has_value(); }
  LpSolution Optimize(const RationalVector& direction, Sense sense) const;

 private:
  int n_ = 0;
  Rational t_;
  std::vector<LpRow> rows_;
  bool below_range_ = false;
};

struct MinimaxResult {
  Rational t;
  Payoff point;
  bool approximate = false;
};

// min over x satisfying `base` of max_{S in active} u_S(v(S) - x(S)). `base`
// rows are over x only and should include the preimputation row. Affine
// utilities solve one exact LP; general ones bisect on t. Throws
// UnboundedBelow when the minimum does not exist.
MinimaxResult MinimizeMaxUExcess(const Game& game, const UtilityFamily& u,
                                 const std::vector<LpRow>& base,
                                 const std::vector<Coalition>& active,
                                 double tolerance = kBisectionTolerance);

struct LeastCoreResult {
  Rational t1;
  LevelSetPolytope polytope;
  Payoff point;
  bool approximate = false;
};

// Throws EmptyNontrivialFamily when A* is empty and UnboundedBelow when A* is
// not balanced.
LeastCoreResult LeastCore(const Game& game, const UtilityFamily& u,
                          double tolerance = kBisectionTolerance);

}  // namespace ucoop

#endif  // UCOOP_CORE_H_
