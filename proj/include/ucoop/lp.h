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

// Exact rational linear programming.
//
// Problems are stated over free variables with rows of the form
// a·x {<=, =, >=} b and optional per-variable bounds. Internally the program
// is brought to standard form (min c·x, Ax = b, x >= 0) either directly or by
// dualizing, whichever gives the smaller dense tableau, and solved by a
// two-phase primal simplex with Bland's rule. All arithmetic is exact.
//
// Dual convention, independent of the sense: at an optimum
//   sum_i dual[i] * rows[i].coeffs + lower_bound_dual + upper_bound_dual = c
//   sum_i dual[i] * rows[i].rhs + sum_j (lower_bound_dual[j] * l_j
//                                       + upper_bound_dual[j] * u_j) = value.
// For minimization dual[i] >= 0 on '>=' rows and <= 0 on '<=' rows; the signs
// flip for maximization.

#ifndef UCOOP_LP_H_
#define UCOOP_LP_H_

#include <optional>
#include <vector>

#include "ucoop/rational.h"

namespace ucoop {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpRow {
  RationalVector coeffs;
  Relation relation = Relation::kGreaterEqual;
  Rational rhs;
};

struct LinearProgram {
  Sense sense = Sense::kMinimize;
  RationalVector objective;
  std::vector<LpRow> rows;
  // Either empty (all variables free) or one entry per variable.
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  int num_variables() const { return static_cast<int>(objective.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  // Optimal: an optimal vertex. Unbounded: a feasible point.
  RationalVector primal;
  Rational objective_value;
  RationalVector dual;
  RationalVector lower_bound_dual;
  RationalVector upper_bound_dual;
  // Unbounded only: recession direction improving the objective.
  RationalVector ray;
  // Infeasible only: y with y·A = 0 (bound multipliers included), y·b > 0,
  // y >= 0 on '>=' rows and lower bounds, y <= 0 on '<=' rows and upper bounds.
  RationalVector farkas;
  RationalVector farkas_lower;
  RationalVector farkas_upper;
};

enum class LpRoute { kAuto, kPrimal, kDual };

struct SolveOptions {
  LpRoute route = LpRoute::kAuto;
};

// Throws MalformedProgram if a row or bound vector has the wrong length.
LpSolution Solve(const LinearProgram& lp, const SolveOptions& options = {});

// Optimizes `direction`·x over the polyhedron given by `rows`.
LpSolution OptimizeDirection(const std::vector<LpRow>& rows,
                             const RationalVector& direction, Sense sense);

// True iff x satisfies every row and bound exactly.
bool IsFeasible(const LinearProgram& lp, const RationalVector& x);
bool SatisfiesRow(const LpRow& row, const RationalVector& x);

}  // namespace ucoop

#endif  // UCOOP_LP_H_
