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

// The lexicographic center algorithm for the u-prenucleolus.
//
// Iteration k minimizes the largest u-excess t over the coalitions not yet
// fixed, inside the previous polytope, giving t_k and X_k. A coalition is
// fixed at iteration k when x(S) is constant on X_k, which is decided by
// minimizing and maximizing x(S) over X_k. Fixed coalitions contribute the
// equality x(S) = constant to every later polytope. The loop ends once every
// coalition is fixed; the final polytope is the u-prenucleolus.

#ifndef UCOOP_LEXCENTER_H_
#define UCOOP_LEXCENTER_H_

#include <vector>

#include "ucoop/core.h"
#include "ucoop/game.h"
#include "ucoop/kohlberg.h"
#include "ucoop/lp.h"
#include "ucoop/rational.h"
#include "ucoop/utility.h"

namespace ucoop {

// Largest min/max probe gap treated as constant for general utilities.
inline constexpr double kFixTolerance = 1e-8;

struct LexCenterOptions {
  double bisection_tolerance = kBisectionTolerance;
  double fix_tolerance = kFixTolerance;
};

struct FixedCoalition {
  Coalition coalition;
  // The constant u-excess c_S on X_k.
  Rational level;
};

struct IterationRecord {
  int k = 0;
  Rational t;
  // Coalitions first found constant at this iteration, canonical order.
  std::vector<FixedCoalition> newly_fixed;
  // Rows over x defining X_k.
  std::vector<LpRow> polytope_rows;
};

struct PrenucleolusResult {
  std::vector<IterationRecord> trace;
  Payoff representative;
  bool is_singleton = false;
  // x(N) = v(N) followed by x(S) = constant for every fixed coalition.
  std::vector<LpRow> solution_description;
  bool approximate = false;
};

// Balancedness of A* with strictly positive weights, which decides whether
// the u-prenucleolus is nonempty. An empty A* counts as balanced since the
// u-prenucleolus is then every preimputation.
BalanceCheck CheckNonempty(const Game& game);

// Throws NotBalanced when A* is not balanced, UnboundedBelow if an iteration
// has no optimum, and BisectionTolerance when a general utility fixes no
// coalition at some iteration.
PrenucleolusResult SolvePrenucleolus(const Game& game, const UtilityFamily& u,
                                     const LexCenterOptions& options = {});

// The same iteration with level constraints taken from `constraint_set` only
// while the fixed coalitions are tracked over all of A*. Stops once every
// member of `constraint_set` is fixed.
PrenucleolusResult SolveOverConstraintSet(
    const Game& game, const UtilityFamily& u,
    const std::vector<Coalition>& constraint_set,
    const LexCenterOptions& options = {});

// Exact rank of a set of rational rows.
int RowRank(std::vector<RationalVector> rows);

// rank of the incidence matrix of A (including N) equals |N|.
bool IsSingleton(const FeasibleFamily& family);

}  // namespace ucoop

#endif  // UCOOP_LEXCENTER_H_
