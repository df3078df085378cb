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

#include "ucoop/lexcenter.h"

#include <cmath>
#include <string>
#include <unordered_set>

#include "ucoop/errors.h"

namespace ucoop {
namespace {

std::string DescribeFailure(const BalanceCheck& check) {
  std::string msg = "A* is not balanced";
  if (!check.uncovered_players.empty()) {
    msg += "; uncovered players:";
    for (int p : check.uncovered_players) msg += " " + std::to_string(p + 1);
  } else if (!check.forced_zero.empty()) {
    msg += "; coalitions forced to weight zero:";
    for (Coalition s : check.forced_zero) msg += " " + s.ToString();
  }
  return msg;
}

// Rows for u_S(e(S, x)) <= t, one per active coalition.
std::vector<LpRow> LevelConstraints(const Game& game, const UtilityFamily& u,
                                    const std::vector<Coalition>& active,
                                    const Rational& t) {
  LevelSetPolytope p = LevelSetPolytope::Build(game, u, active, t);
  std::vector<LpRow> rows(p.rows().begin() + 1, p.rows().end());
  return rows;
}

// Rows kept in echelon form: each added row is reduced against the earlier
// ones and kept only if something remains.
class EchelonBasis {
 public:
  void Add(RationalVector row) {
    if (cols_ < 0) cols_ = static_cast<int>(row.size());
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const int p = pivots_[b];
      if (row[p] == 0) continue;
      const Rational f = row[p] / rows_[b][p];
      for (int c = 0; c < cols_; ++c) {
        if (rows_[b][c] != 0) row[c] -= f * rows_[b][c];
      }
    }
    int p = 0;
    while (p < cols_ && row[p] == 0) ++p;
    if (p == cols_) return;
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
  }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool full() const { return cols_ >= 0 && rank() == cols_; }

 private:
  int cols_ = -1;
  std::vector<RationalVector> rows_;
  std::vector<int> pivots_;
};

class LexCenter {
 public:
  LexCenter(const Game& game, const UtilityFamily& u,
            std::vector<Coalition> constraint_set,
            const LexCenterOptions& options)
      : game_(game),
        u_(u),
        options_(options),
        constraints_(std::move(constraint_set)),
        n_(game.num_players()) {
    SortCanonical(constraints_);
  }

  PrenucleolusResult Run() {
    PrenucleolusResult result;
    result.approximate = !u_.is_affine();
    std::vector<LpRow> base = {PreimputationRow(game_)};
    Payoff last_point;
    const auto& tracked = game_.family().nontrivial();
    const int cap = static_cast<int>(tracked.size()) + 1;

    for (int k = 1;; ++k) {
      std::vector<Coalition> active;
      for (Coalition s : constraints_) {
        if (!fixed_.count(s)) active.push_back(s);
      }
      if (active.empty()) break;
      if (k > cap) {
        throw InternalError("lexicographic center exceeded " +
                            std::to_string(cap) + " iterations");
      }
      const MinimaxResult m = MinimizeMaxUExcess(
          game_, u_, base, active, options_.bisection_tolerance);

      IterationRecord record;
      record.k = k;
      record.t = m.t;
      record.polytope_rows = base;
      for (auto& row : LevelConstraints(game_, u_, active, m.t)) {
        record.polytope_rows.push_back(std::move(row));
      }

      std::vector<Payoff> seen = {m.point};
      for (Coalition s : tracked) {
        if (fixed_.count(s)) continue;
        if (auto c = ConstantOn(record.polytope_rows, s, seen)) {
          record.newly_fixed.push_back({s, u_.Apply(s, game_.Value(s) - *c)});
        }
      }
      if (record.newly_fixed.empty()) {
        if (u_.is_affine()) {
          throw InternalError("iteration " + std::to_string(k) +
                              " fixed no coalition");
        }
        throw BisectionTolerance("iteration " + std::to_string(k) +
                                 " could not separate a fixed coalition");
      }
      for (const auto& f : record.newly_fixed) {
        fixed_.insert(f.coalition);
        // General utilities take the constant from the single point m.point
        // so that the accumulated equalities stay mutually consistent.
        const Rational value = CoalitionSum(m.point, f.coalition);
        base.push_back({Indicator(f.coalition, n_), Relation::kEqual, value});
      }
      last_point = m.point;
      result.trace.push_back(std::move(record));
    }

    if (last_point.empty()) {
      // No level constraints at all: every preimputation qualifies.
      last_point.assign(n_, Rational(0));
      last_point[0] = game_.GrandValue();
    }
    result.representative = std::move(last_point);
    result.solution_description = base;
    std::vector<RationalVector> coeffs;
    for (const auto& row : base) coeffs.push_back(row.coeffs);
    result.is_singleton = RowRank(std::move(coeffs)) == n_;
    return result;
  }

 private:
  // The constant value of x(S) over the polytope, if there is one. `seen`
  // collects probe optima, which rule out most coalitions without an LP.
  std::optional<Rational> ConstantOn(const std::vector<LpRow>& rows,
                                     Coalition s, std::vector<Payoff>& seen) {
    const Rational first = CoalitionSum(seen.front(), s);
    for (std::size_t i = 1; i < seen.size(); ++i) {
      if (!Close(CoalitionSum(seen[i], s), first)) return std::nullopt;
    }
    const RationalVector dir = Indicator(s, n_);
    const LpSolution lo = OptimizeDirection(rows, dir, Sense::kMinimize);
    const LpSolution hi = OptimizeDirection(rows, dir, Sense::kMaximize);
    if (lo.status != LpStatus::kOptimal || hi.status != LpStatus::kOptimal) {
      if (lo.status == LpStatus::kInfeasible || hi.status == LpStatus::kInfeasible) {
        throw InternalError("probe over an empty polytope");
      }
      if (lo.status == LpStatus::kOptimal) seen.push_back(lo.primal);
      if (hi.status == LpStatus::kOptimal) seen.push_back(hi.primal);
      return std::nullopt;
    }
    seen.push_back(lo.primal);
    seen.push_back(hi.primal);
    if (!Close(lo.objective_value, hi.objective_value)) return std::nullopt;
    return first;
  }

  bool Close(const Rational& a, const Rational& b) const {
    if (u_.is_affine()) return a == b;
    return std::abs(ToDouble(a - b)) <= options_.fix_tolerance;
  }

  const Game& game_;
  const UtilityFamily& u_;
  LexCenterOptions options_;
  std::vector<Coalition> constraints_;
  int n_;
  std::unordered_set<Coalition, CoalitionHash> fixed_;
};

}  // namespace

BalanceCheck CheckNonempty(const Game& game) {
  const auto& nontrivial = game.family().nontrivial();
  if (nontrivial.empty()) {
    BalanceCheck check;
    check.balanced = true;
    return check;
  }
  return CheckBalanced(game.num_players(), nontrivial);
}

PrenucleolusResult SolvePrenucleolus(const Game& game, const UtilityFamily& u,
                                     const LexCenterOptions& options) {
  const BalanceCheck check = CheckNonempty(game);
  if (!check.balanced) throw NotBalanced(DescribeFailure(check));
  return LexCenter(game, u, game.family().nontrivial(), options).Run();
}

PrenucleolusResult SolveOverConstraintSet(
    const Game& game, const UtilityFamily& u,
    const std::vector<Coalition>& constraint_set,
    const LexCenterOptions& options) {
  for (Coalition s : constraint_set) {
    if (!game.family().Contains(s) || s.empty() || s == game.grand()) {
      throw UnknownCoalition(s.ToString() + " is not in A*");
    }
  }
  return LexCenter(game, u, constraint_set, options).Run();
}

int RowRank(std::vector<RationalVector> rows) {
  EchelonBasis basis;
  for (auto& row : rows) {
    if (basis.full()) break;
    basis.Add(std::move(row));
  }
  return basis.rank();
}

bool IsSingleton(const FeasibleFamily& family) {
  const int n = family.num_players();
  EchelonBasis basis;
  for (Coalition s : family.coalitions()) {
    if (s.empty()) continue;
    basis.Add(Indicator(s, n));
    if (basis.rank() == n) return true;
  }
  return false;
}

}  // namespace ucoop
