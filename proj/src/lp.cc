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

#include "ucoop/lp.h"

#include <cstddef>
#include <string>
#include <utility>

#include "ucoop/errors.h"

namespace ucoop {
namespace {

// min c·x  s.t.  A x = b, x >= 0.
struct StandardForm {
  std::vector<RationalVector> a;
  RationalVector b;
  RationalVector c;
};

struct StandardResult {
  LpStatus status = LpStatus::kInfeasible;
  RationalVector x;
  // Optimal: duals with A^T y <= c and b·y = c·x.
  // Infeasible: Farkas vector with A^T y <= 0 and b·y > 0.
  RationalVector y;
  RationalVector ray;
};

// Dense two-phase simplex. Rows 0..m-1 hold constraints, row m holds reduced
// costs; the last column is the right-hand side. Columns past `num_cols_` are
// artificials, which never re-enter the basis once they leave it.
class Tableau {
 public:
  explicit Tableau(const StandardForm& sf)
      : m_(static_cast<int>(sf.b.size())),
        num_cols_(static_cast<int>(sf.c.size())),
        sign_(m_, 1),
        unit_col_(m_, -1),
        basis_(m_, -1) {
    for (int r = 0; r < m_; ++r) {
      if (sf.b[r] < 0) sign_[r] = -1;
    }
    // Reuse +1 unit columns as the initial basis where available.
    for (int j = 0; j < num_cols_; ++j) {
      int row = -1;
      bool unit = true;
      for (int r = 0; r < m_ && unit; ++r) {
        const Rational& v = sf.a[r][j];
        if (v == 0) continue;
        if (row != -1 || v * sign_[r] != 1) unit = false;
        row = r;
      }
      if (unit && row != -1 && unit_col_[row] == -1) unit_col_[row] = j;
    }
    int total = num_cols_;
    for (int r = 0; r < m_; ++r) {
      if (unit_col_[r] == -1) unit_col_[r] = total++;
    }
    total_cols_ = total;
    rhs_ = total_cols_;
    t_.assign(m_ + 1, RationalVector(total_cols_ + 1));
    for (int r = 0; r < m_; ++r) {
      for (int j = 0; j < num_cols_; ++j) {
        if (sf.a[r][j] != 0) t_[r][j] = sign_[r] * sf.a[r][j];
      }
      if (unit_col_[r] >= num_cols_) t_[r][unit_col_[r]] = 1;
      t_[r][rhs_] = sign_[r] * sf.b[r];
      basis_[r] = unit_col_[r];
    }
  }

  StandardResult Run(const RationalVector& cost) {
    StandardResult result;
    // Phase 1: minimize the sum of artificials.
    bool has_artificial = false;
    for (int r = 0; r < m_; ++r) {
      if (IsArtificial(basis_[r])) {
        has_artificial = true;
        for (int k = 0; k <= total_cols_; ++k) {
          if (t_[r][k] != 0 && !IsArtificial(k)) t_[m_][k] -= t_[r][k];
        }
      }
    }
    if (has_artificial) {
      Iterate(/*phase_one=*/true);
      if (t_[m_][rhs_] != 0) {
        // Phase-1 optimum is -t_[m_][rhs_] > 0.
        result.status = LpStatus::kInfeasible;
        result.y.resize(m_);
        for (int r = 0; r < m_; ++r) {
          const int u = unit_col_[r];
          const Rational c1 = IsArtificial(u) ? Rational(1) : Rational(0);
          result.y[r] = sign_[r] * (c1 - t_[m_][u]);
        }
        return result;
      }
      DriveOutArtificials();
    }

    // Phase 2 reduced costs.
    for (int k = 0; k <= total_cols_; ++k) {
      t_[m_][k] = (k < num_cols_) ? cost[k] : Rational(0);
    }
    for (int r = 0; r < m_; ++r) {
      const int bc = basis_[r];
      if (bc >= num_cols_ || cost[bc] == 0) continue;
      const Rational cb = cost[bc];
      for (int k = 0; k <= total_cols_; ++k) {
        if (t_[r][k] != 0) t_[m_][k] -= cb * t_[r][k];
      }
    }
    const int unbounded_col = Iterate(/*phase_one=*/false);

    result.x.assign(num_cols_, Rational(0));
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < num_cols_) result.x[basis_[r]] = t_[r][rhs_];
    }
    if (unbounded_col >= 0) {
      result.status = LpStatus::kUnbounded;
      result.ray.assign(num_cols_, Rational(0));
      result.ray[unbounded_col] = 1;
      for (int r = 0; r < m_; ++r) {
        if (basis_[r] < num_cols_) result.ray[basis_[r]] = -t_[r][unbounded_col];
      }
      return result;
    }
    result.status = LpStatus::kOptimal;
    result.y.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const int u = unit_col_[r];
      const Rational cu = (u < num_cols_) ? cost[u] : Rational(0);
      result.y[r] = sign_[r] * (cu - t_[m_][u]);
    }
    return result;
  }

 private:
  bool IsArtificial(int col) const { return col >= num_cols_ && col < rhs_; }

  // Returns the entering column certifying unboundedness, or -1 at optimality.
  int Iterate(bool phase_one) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < num_cols_; ++j) {
        if (t_[m_][j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      Rational best;
      for (int r = 0; r < m_; ++r) {
        if (t_[r][enter] <= 0) continue;
        Rational ratio = t_[r][rhs_] / t_[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave < 0) {
        if (phase_one) throw InternalError("phase one reported unbounded");
        return enter;
      }
      Pivot(leave, enter);
    }
  }

  void DriveOutArtificials() {
    for (int r = 0; r < m_; ++r) {
      if (!IsArtificial(basis_[r])) continue;
      for (int j = 0; j < num_cols_; ++j) {
        if (t_[r][j] != 0) {
          Pivot(r, j);
          break;
        }
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  void Pivot(int row, int col) {
    std::vector<int> nz;
    const Rational piv = t_[row][col];
    for (int k = 0; k <= total_cols_; ++k) {
      if (t_[row][k] == 0) continue;
      if (piv != 1) t_[row][k] /= piv;
      nz.push_back(k);
    }
    Rational f;
    for (int i = 0; i <= m_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      f = t_[i][col];
      for (int k : nz) t_[i][k] -= f * t_[row][k];
    }
    basis_[row] = col;
  }

  int m_;
  int num_cols_;
  int total_cols_ = 0;
  int rhs_ = 0;
  std::vector<int> sign_;
  std::vector<int> unit_col_;
  std::vector<int> basis_;
  std::vector<RationalVector> t_;
};

StandardResult SolveStandard(const StandardForm& sf) {
  Tableau tableau(sf);
  return tableau.Run(sf.c);
}

// User rows followed by one row per finite bound.
struct Constraint {
  RationalVector coeffs;
  Relation relation;
  Rational rhs;
};

struct Expanded {
  std::vector<Constraint> rows;
  // Origin of row i: user row (index, -1) or bound (variable, 0=lower 1=upper).
  std::vector<std::pair<int, int>> origin;
};

// Variables with a finite lower bound and no upper bound are shifted to
// nonnegative columns by the primal route instead of getting a bound row.
bool IsShiftable(const LinearProgram& lp, int j) {
  return !lp.lower.empty() && lp.lower[j] &&
         (lp.upper.empty() || !lp.upper[j]);
}

Expanded Expand(const LinearProgram& lp, bool shift_lower) {
  const int n = lp.num_variables();
  Expanded ex;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    ex.rows.push_back({lp.rows[i].coeffs, lp.rows[i].relation, lp.rows[i].rhs});
    ex.origin.emplace_back(static_cast<int>(i), -1);
  }
  auto add_bound = [&](int j, const Rational& value, Relation rel, int kind) {
    RationalVector e(n);
    e[j] = 1;
    ex.rows.push_back({std::move(e), rel, value});
    ex.origin.emplace_back(j, kind);
  };
  for (int j = 0; j < n; ++j) {
    if (!lp.lower.empty() && lp.lower[j] &&
        !(shift_lower && IsShiftable(lp, j))) {
      add_bound(j, *lp.lower[j], Relation::kGreaterEqual, 0);
    }
    if (!lp.upper.empty() && lp.upper[j]) {
      add_bound(j, *lp.upper[j], Relation::kLessEqual, 1);
    }
  }
  return ex;
}

void Validate(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (lp.rows[i].coeffs.size() != n) {
      throw MalformedProgram("row " + std::to_string(i) + " has " +
                             std::to_string(lp.rows[i].coeffs.size()) +
                             " coefficients, expected " + std::to_string(n));
    }
  }
  if ((!lp.lower.empty() && lp.lower.size() != n) ||
      (!lp.upper.empty() && lp.upper.size() != n)) {
    throw MalformedProgram("bound vector length differs from variable count");
  }
}

// Multipliers on expanded rows, split back into row and bound parts.
void Scatter(const Expanded& ex, const RationalVector& y, int num_rows, int n,
             RationalVector& rows, RationalVector& lower,
             RationalVector& upper) {
  rows.assign(num_rows, Rational(0));
  lower.assign(n, Rational(0));
  upper.assign(n, Rational(0));
  for (std::size_t i = 0; i < ex.rows.size(); ++i) {
    const auto [idx, kind] = ex.origin[i];
    if (kind < 0) {
      rows[idx] = y[i];
    } else if (kind == 0) {
      lower[idx] = y[i];
    } else {
      upper[idx] = y[i];
    }
  }
}

// Standard form with x = p - q for free variables, x = l + p for shiftable
// ones, and one slack per inequality.
LpSolution SolvePrimalRoute(const LinearProgram& lp, const Expanded& ex,
                            const RationalVector& cmin) {
  const int n = lp.num_variables();
  const int m = static_cast<int>(ex.rows.size());
  std::vector<int> pos(n), neg(n, -1);
  std::vector<bool> shifted(n, false);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    shifted[j] = IsShiftable(lp, j);
    pos[j] = cols++;
    if (!shifted[j]) neg[j] = cols++;
  }
  int num_slack = 0;
  for (const auto& r : ex.rows) {
    if (r.relation != Relation::kEqual) ++num_slack;
  }
  StandardForm sf;
  int slack = cols;
  cols += num_slack;
  sf.a.assign(m, RationalVector(cols));
  sf.b.resize(m);
  sf.c.assign(cols, Rational(0));
  for (int i = 0; i < m; ++i) {
    const auto& r = ex.rows[i];
    sf.b[i] = r.rhs;
    for (int j = 0; j < n; ++j) {
      if (r.coeffs[j] == 0) continue;
      sf.a[i][pos[j]] = r.coeffs[j];
      if (shifted[j]) {
        sf.b[i] -= r.coeffs[j] * *lp.lower[j];
      } else {
        sf.a[i][neg[j]] = -r.coeffs[j];
      }
    }
    if (r.relation == Relation::kLessEqual) sf.a[i][slack++] = 1;
    if (r.relation == Relation::kGreaterEqual) sf.a[i][slack++] = -1;
  }
  for (int j = 0; j < n; ++j) {
    sf.c[pos[j]] = cmin[j];
    if (!shifted[j]) sf.c[neg[j]] = -cmin[j];
  }
  const StandardResult sr = SolveStandard(sf);

  // y·A restricted to column j of the original variables.
  auto column_dot = [&](int j, const RationalVector& y) {
    Rational s = 0;
    for (int i = 0; i < m; ++i) {
      if (ex.rows[i].coeffs[j] != 0) s += y[i] * ex.rows[i].coeffs[j];
    }
    return s;
  };

  LpSolution sol;
  sol.status = sr.status;
  const int num_rows = static_cast<int>(lp.rows.size());
  if (sr.status == LpStatus::kInfeasible) {
    Scatter(ex, sr.y, num_rows, n, sol.farkas, sol.farkas_lower,
            sol.farkas_upper);
    for (int j = 0; j < n; ++j) {
      if (shifted[j]) sol.farkas_lower[j] = -column_dot(j, sr.y);
    }
    return sol;
  }
  sol.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    sol.primal[j] = shifted[j] ? Rational(*lp.lower[j] + sr.x[pos[j]])
                               : Rational(sr.x[pos[j]] - sr.x[neg[j]]);
  }
  if (sr.status == LpStatus::kUnbounded) {
    sol.ray.resize(n);
    for (int j = 0; j < n; ++j) {
      sol.ray[j] = shifted[j] ? sr.ray[pos[j]]
                            : Rational(sr.ray[pos[j]] - sr.ray[neg[j]]);
    }
    return sol;
  }
  Scatter(ex, sr.y, num_rows, n, sol.dual, sol.lower_bound_dual,
          sol.upper_bound_dual);
  for (int j = 0; j < n; ++j) {
    if (shifted[j]) sol.lower_bound_dual[j] = cmin[j] - column_dot(j, sr.y);
  }
  return sol;
}

// Standard form of the dual: one column per sign-constrained multiplier, one
// row per primal variable.
StandardForm DualStandardForm(const Expanded& ex, int n,
                              const RationalVector& rhs,
                              std::vector<std::pair<int, int>>& col_of) {
  // col_of[c] = (expanded row, +1 or -1): y_row += sign * w_c.
  col_of.clear();
  for (int i = 0; i < static_cast<int>(ex.rows.size()); ++i) {
    switch (ex.rows[i].relation) {
      case Relation::kGreaterEqual:
        col_of.emplace_back(i, 1);
        break;
      case Relation::kLessEqual:
        col_of.emplace_back(i, -1);
        break;
      case Relation::kEqual:
        col_of.emplace_back(i, 1);
        col_of.emplace_back(i, -1);
        break;
    }
  }
  StandardForm sf;
  const int cols = static_cast<int>(col_of.size());
  sf.a.assign(n, RationalVector(cols));
  sf.c.resize(cols);
  for (int c = 0; c < cols; ++c) {
    const auto [i, s] = col_of[c];
    for (int j = 0; j < n; ++j) {
      if (ex.rows[i].coeffs[j] != 0) sf.a[j][c] = s * ex.rows[i].coeffs[j];
    }
    sf.c[c] = -s * ex.rows[i].rhs;
  }
  sf.b = rhs;
  return sf;
}

RationalVector Multipliers(const std::vector<std::pair<int, int>>& col_of,
                           const RationalVector& w, int num_expanded) {
  RationalVector y(num_expanded);
  for (std::size_t c = 0; c < col_of.size(); ++c) {
    if (w[c] != 0) y[col_of[c].first] += col_of[c].second * w[c];
  }
  return y;
}

LpSolution SolveDualRoute(const LinearProgram& lp, const Expanded& ex,
                          const RationalVector& cmin) {
  const int n = lp.num_variables();
  const int me = static_cast<int>(ex.rows.size());
  const int num_rows = static_cast<int>(lp.rows.size());
  std::vector<std::pair<int, int>> col_of;
  const StandardForm sf = DualStandardForm(ex, n, cmin, col_of);
  const StandardResult sr = SolveStandard(sf);

  LpSolution sol;
  if (sr.status == LpStatus::kOptimal) {
    sol.status = LpStatus::kOptimal;
    sol.primal.resize(n);
    for (int j = 0; j < n; ++j) sol.primal[j] = -sr.y[j];
    Scatter(ex, Multipliers(col_of, sr.x, me), num_rows, n, sol.dual,
            sol.lower_bound_dual, sol.upper_bound_dual);
    return sol;
  }
  if (sr.status == LpStatus::kUnbounded) {
    sol.status = LpStatus::kInfeasible;
    Scatter(ex, Multipliers(col_of, sr.ray, me), num_rows, n, sol.farkas,
            sol.farkas_lower, sol.farkas_upper);
    return sol;
  }
  // Dual infeasible: the primal is unbounded if it is feasible at all.
  RationalVector ray(n);
  for (int j = 0; j < n; ++j) ray[j] = -sr.y[j];
  StandardForm feas = sf;
  feas.b.assign(n, Rational(0));
  const StandardResult fr = SolveStandard(feas);
  if (fr.status == LpStatus::kUnbounded) {
    sol.status = LpStatus::kInfeasible;
    Scatter(ex, Multipliers(col_of, fr.ray, me), num_rows, n, sol.farkas,
            sol.farkas_lower, sol.farkas_upper);
    return sol;
  }
  sol.status = LpStatus::kUnbounded;
  sol.primal.resize(n);
  for (int j = 0; j < n; ++j) sol.primal[j] = -fr.y[j];
  sol.ray = std::move(ray);
  return sol;
}

}  // namespace

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

bool SatisfiesRow(const LpRow& row, const RationalVector& x) {
  const Rational lhs = Dot(row.coeffs, x);
  switch (row.relation) {
    case Relation::kLessEqual:
      return lhs <= row.rhs;
    case Relation::kEqual:
      return lhs == row.rhs;
    case Relation::kGreaterEqual:
      return lhs >= row.rhs;
  }
  return false;
}

bool IsFeasible(const LinearProgram& lp, const RationalVector& x) {
  if (x.size() != lp.objective.size()) return false;
  for (const auto& row : lp.rows) {
    if (!SatisfiesRow(row, x)) return false;
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!lp.lower.empty() && lp.lower[j] && x[j] < *lp.lower[j]) return false;
    if (!lp.upper.empty() && lp.upper[j] && x[j] > *lp.upper[j]) return false;
  }
  return true;
}

LpSolution Solve(const LinearProgram& lp, const SolveOptions& options) {
  Validate(lp);
  const int n = lp.num_variables();
  const Expanded ex = Expand(lp, false);
  RationalVector cmin = lp.objective;
  if (lp.sense == Sense::kMaximize) {
    for (auto& c : cmin) c = -c;
  }

  LpRoute route = options.route;
  if (n == 0) route = LpRoute::kPrimal;
  if (route == LpRoute::kAuto) {
    const Expanded& full = ex;
    std::size_t eq = 0;
    for (const auto& r : full.rows) eq += r.relation == Relation::kEqual;
    std::size_t shiftable = 0;
    for (int j = 0; j < n; ++j) shiftable += IsShiftable(lp, j);
    const std::size_t m = full.rows.size();
    const std::size_t mp = m - shiftable;
    const std::size_t primal_cost = mp * (2 * n - shiftable + 2 * mp);
    const std::size_t dual_cost = n * (m + eq + n);
    route = dual_cost < primal_cost ? LpRoute::kDual : LpRoute::kPrimal;
  }
  LpSolution sol = route == LpRoute::kDual
                       ? SolveDualRoute(lp, ex, cmin)
                       : SolvePrimalRoute(lp, Expand(lp, true), cmin);

  if (sol.status == LpStatus::kOptimal) {
    if (!IsFeasible(lp, sol.primal)) {
      throw InternalError("simplex returned an infeasible optimum");
    }
    sol.objective_value = Dot(lp.objective, sol.primal);
    if (lp.sense == Sense::kMaximize) {
      for (auto& y : sol.dual) y = -y;
      for (auto& y : sol.lower_bound_dual) y = -y;
      for (auto& y : sol.upper_bound_dual) y = -y;
    }
  } else if (sol.status == LpStatus::kUnbounded) {
    sol.objective_value = 0;
  }
  return sol;
}

LpSolution OptimizeDirection(const std::vector<LpRow>& rows,
                             const RationalVector& direction, Sense sense) {
  LinearProgram lp;
  lp.sense = sense;
  lp.objective = direction;
  lp.rows = rows;
  return Solve(lp);
}

}  // namespace ucoop
