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

#include "ucoop/core.h"

#include <algorithm>
#include <cmath>

#include "ucoop/errors.h"

namespace ucoop {
namespace {

RationalVector Padded(const RationalVector& v, int extra) {
  RationalVector out = v;
  out.resize(v.size() + extra);
  return out;
}

// Row for x(S) >= v(S) - u_S^{-1}(t); nullopt when every x satisfies it.
// Throws OutOfRange when t is at or below the bottom of the range.
std::optional<LpRow> LevelRow(const Game& game, const UtilityFamily& u,
                              Coalition s, const Rational& t) {
  const int n = game.num_players();
  if (u.is_affine()) {
    return LinearizedConstraint(u.affine(), game, s, false, t);
  }
  const double td = ToDouble(t);
  if (td >= u.general().range_hi()) return std::nullopt;
  if (td <= u.general().range_lo()) {
    throw OutOfRange("level below the utility range");
  }
  return LpRow{Indicator(s, n), Relation::kGreaterEqual,
               game.Value(s) - u.Inverse(s, t)};
}

std::optional<Payoff> FeasiblePoint(const std::vector<LpRow>& rows, int n) {
  LinearProgram lp;
  lp.objective.assign(n, Rational(0));
  lp.rows = rows;
  const LpSolution sol = Solve(lp);
  if (sol.status == LpStatus::kInfeasible) return std::nullopt;
  return sol.primal;
}

// Rows of X(active, t) over `base`, or nullopt when t is below the range.
std::optional<std::vector<LpRow>> LevelRows(
    const Game& game, const UtilityFamily& u, const std::vector<LpRow>& base,
    const std::vector<Coalition>& active, const Rational& t) {
  std::vector<LpRow> rows = base;
  for (Coalition s : active) {
    try {
      if (auto row = LevelRow(game, u, s, t)) rows.push_back(std::move(*row));
    } catch (const OutOfRange&) {
      return std::nullopt;
    }
  }
  return rows;
}

MinimaxResult AffineMinimax(const Game& game, const AffineUtility& u,
                            const std::vector<LpRow>& base,
                            const std::vector<Coalition>& active) {
  const int n = game.num_players();
  LinearProgram lp;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  for (const auto& row : base) {
    lp.rows.push_back({Padded(row.coeffs, 1), row.relation, row.rhs});
  }
  for (Coalition s : active) {
    lp.rows.push_back(LinearizedConstraint(u, game, s, true));
  }
  const LpSolution sol = Solve(lp);
  if (sol.status == LpStatus::kUnbounded) {
    throw UnboundedBelow("the largest u-excess can be made arbitrarily small");
  }
  if (sol.status == LpStatus::kInfeasible) {
    throw InternalError("minimax program over an empty polytope");
  }
  MinimaxResult out;
  out.t = sol.primal[n];
  out.point.assign(sol.primal.begin(), sol.primal.begin() + n);
  return out;
}

MinimaxResult GeneralMinimax(const Game& game, const UtilityFamily& u,
                             const std::vector<LpRow>& base,
                             const std::vector<Coalition>& active,
                             double tolerance) {
  const int n = game.num_players();
  // A raw-excess minimax point exists iff the u-excess one does; it also
  // gives a feasible upper end for the bisection.
  const MinimaxResult raw =
      AffineMinimax(game, AffineUtility::Identity(), base, active);
  double hi = -std::numeric_limits<double>::infinity();
  for (Coalition s : active) {
    hi = std::max(hi, ToDouble(u.Apply(s, game.Excess(s, raw.point))));
  }
  const double lo_range = u.general().range_lo();
  auto feasible = [&](double t) -> std::optional<Payoff> {
    if (t <= lo_range) return std::nullopt;
    auto rows = LevelRows(game, u, base, active, FromDouble(t));
    if (!rows) return std::nullopt;
    return FeasiblePoint(*rows, n);
  };

  std::optional<Payoff> hi_point = feasible(hi);
  for (int i = 0; !hi_point && i < 64; ++i) {
    hi += tolerance * (1 + std::abs(hi));
    hi_point = feasible(hi);
  }
  if (!hi_point) {
    throw BisectionTolerance("no feasible level near the raw minimax point");
  }

  double lo = hi;
  bool found = false;
  for (int j = 1; j < 200; ++j) {
    lo = std::isfinite(lo_range) ? lo_range + (hi - lo_range) / 2
                                 : hi - std::ldexp(1.0, j);
    auto p = feasible(lo);
    if (!p) {
      found = true;
      break;
    }
    hi = lo;
    hi_point = std::move(p);
  }
  if (!found) throw BisectionTolerance("could not bracket the minimax level");

  while (hi - lo > tolerance) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (auto p = feasible(mid)) {
      hi = mid;
      hi_point = std::move(p);
    } else {
      lo = mid;
    }
  }
  MinimaxResult out;
  out.t = FromDouble(hi);
  out.point = std::move(*hi_point);
  out.approximate = true;
  return out;
}

}  // namespace

const char* ToString(CoreVerdict verdict) {
  switch (verdict) {
    case CoreVerdict::kNonEmptyAllPreimputations:
      return "nonempty-all-preimputations";
    case CoreVerdict::kEmpty:
      return "empty";
    case CoreVerdict::kDecidedByLp:
      return "decided-by-lp";
  }
  return "unknown";
}

LpRow PreimputationRow(const Game& game) {
  return {Indicator(game.grand(), game.num_players()), Relation::kEqual,
          game.GrandValue()};
}

bool CoreMembership(const Game& game, const UtilityFamily& u,
                    const Payoff& x) {
  if (!game.IsPreimputation(x)) return false;
  switch (u.range_class()) {
    case RangeClass::kNegative:
      return true;
    case RangeClass::kPositive:
      return game.family().nontrivial().empty();
    case RangeClass::kContainsZero:
      break;
  }
  for (Coalition s : game.family().nontrivial()) {
    if (u.is_affine()) {
      if (UExcess(u, game, s, x) > 0) return false;
    } else {
      const Rational bound = u.Inverse(s, 0);
      const Rational slack = FromDouble(
          kInverseTolerance * std::max(1.0, std::abs(ToDouble(bound))));
      if (game.Excess(s, x) > bound + slack) return false;
    }
  }
  return true;
}

CoreStatus CoreEmptiness(const Game& game, const UtilityFamily& u) {
  CoreStatus status;
  const auto& nontrivial = game.family().nontrivial();
  if (nontrivial.empty() || u.range_class() == RangeClass::kNegative) {
    status.verdict = CoreVerdict::kNonEmptyAllPreimputations;
    status.core_nonempty = true;
    return status;
  }
  if (u.range_class() == RangeClass::kPositive) {
    status.verdict = CoreVerdict::kEmpty;
    return status;
  }
  const int n = game.num_players();
  LinearProgram lp;
  lp.objective = Indicator(game.grand(), n);
  for (Coalition s : nontrivial) {
    lp.rows.push_back({Indicator(s, n), Relation::kGreaterEqual,
                       game.Value(s) - u.Inverse(s, 0)});
  }
  lp.rows.push_back(
      {Indicator(game.grand(), n), Relation::kGreaterEqual, game.GrandValue()});
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InternalError("minimum-total program not optimal");
  }
  status.verdict = CoreVerdict::kDecidedByLp;
  status.lp_optimum = sol.objective_value;
  status.core_nonempty = sol.objective_value == game.GrandValue();
  status.approximate = !u.is_affine();
  if (status.core_nonempty) status.witness = sol.primal;
  for (std::size_t i = 0; i < nontrivial.size(); ++i) {
    if (sol.dual[i] != 0) status.dual_weights.emplace_back(nontrivial[i], sol.dual[i]);
  }
  if (sol.dual.back() != 0) {
    status.dual_weights.emplace_back(game.grand(), sol.dual.back());
  }
  return status;
}

BalancednessResult UBalanced(const Game& game, const UtilityFamily& u) {
  BalancednessResult out;
  const auto& nontrivial = game.family().nontrivial();
  if (nontrivial.empty() || u.range_class() == RangeClass::kNegative) {
    out.balanced = true;
    return out;
  }
  if (u.range_class() == RangeClass::kPositive) return out;
  const int n = game.num_players();
  const int k = static_cast<int>(nontrivial.size());
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  lp.objective.resize(k + 1);
  for (int c = 0; c < k; ++c) {
    lp.objective[c] = game.Value(nontrivial[c]) - u.Inverse(nontrivial[c], 0);
  }
  lp.objective[k] = game.GrandValue();
  for (int i = 0; i < n; ++i) {
    LpRow row;
    row.coeffs.assign(k + 1, Rational(0));
    for (int c = 0; c < k; ++c) {
      if (nontrivial[c].Contains(i)) row.coeffs[c] = 1;
    }
    row.coeffs[k] = 1;
    row.relation = Relation::kEqual;
    row.rhs = 1;
    lp.rows.push_back(std::move(row));
  }
  lp.lower.assign(k + 1, Rational(0));
  lp.upper.assign(k + 1, std::nullopt);
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InternalError("balancing-weight program not optimal");
  }
  out.weighted_value = sol.objective_value;
  out.balanced = sol.objective_value <= game.GrandValue();
  out.approximate = !u.is_affine();
  for (int c = 0; c < k; ++c) {
    if (sol.primal[c] != 0) out.weights.emplace_back(nontrivial[c], sol.primal[c]);
  }
  if (sol.primal[k] != 0) out.weights.emplace_back(game.grand(), sol.primal[k]);
  return out;
}

LevelSetPolytope LevelSetPolytope::Build(const Game& game,
                                         const UtilityFamily& u,
                                         const std::vector<Coalition>& coalitions,
                                         const Rational& t,
                                         std::vector<LpRow> frozen) {
  LevelSetPolytope p;
  p.n_ = game.num_players();
  p.t_ = t;
  p.rows_.push_back(PreimputationRow(game));
  for (auto& row : frozen) p.rows_.push_back(std::move(row));
  for (Coalition s : coalitions) {
    try {
      if (auto row = LevelRow(game, u, s, t)) p.rows_.push_back(std::move(*row));
    } catch (const OutOfRange&) {
      p.below_range_ = true;
    }
  }
  return p;
}

bool LevelSetPolytope::Contains(const Payoff& x) const {
  if (below_range_) return false;
  return std::all_of(rows_.begin(), rows_.end(),
                     [&](const LpRow& r) { return SatisfiesRow(r, x); });
}

std::optional<Payoff> LevelSetPolytope::AnyPoint() const {
  if (below_range_) return std::nullopt;
  return FeasiblePoint(rows_, n_);
}

LpSolution LevelSetPolytope::Optimize(const RationalVector& direction,
                                      Sense sense) const {
  if (below_range_) {
    LpSolution empty;
    empty.status = LpStatus::kInfeasible;
    return empty;
  }
  return OptimizeDirection(rows_, direction, sense);
}

MinimaxResult MinimizeMaxUExcess(const Game& game, const UtilityFamily& u,
                                 const std::vector<LpRow>& base,
                                 const std::vector<Coalition>& active,
                                 double tolerance) {
  if (active.empty()) throw EmptyNontrivialFamily("no constraints to minimize");
  if (u.is_affine()) return AffineMinimax(game, u.affine(), base, active);
  return GeneralMinimax(game, u, base, active, tolerance);
}

LeastCoreResult LeastCore(const Game& game, const UtilityFamily& u,
                          double tolerance) {
  const auto& nontrivial = game.family().nontrivial();
  if (nontrivial.empty()) {
    throw EmptyNontrivialFamily("A* is empty; every preimputation is in the core");
  }
  MinimaxResult m = MinimizeMaxUExcess(game, u, {PreimputationRow(game)},
                                       nontrivial, tolerance);
  LevelSetPolytope polytope =
      LevelSetPolytope::Build(game, u, nontrivial, m.t);
  return {m.t, std::move(polytope), std::move(m.point), m.approximate};
}

}  // namespace ucoop
