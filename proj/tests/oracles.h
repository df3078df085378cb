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

// Test-only oracles. Nothing here calls the simplex or the lexicographic
// center code; each routine decides its answer by enumeration or search.

#ifndef UCOOP_TESTS_ORACLES_H_
#define UCOOP_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "ucoop/game.h"
#include "ucoop/lp.h"
#include "ucoop/rational.h"

namespace ucoop::testing {

// ---------------------------------------------------------------------------
// Exact linear algebra.

// Solves the square system exactly; nullopt when singular.
inline std::optional<RationalVector> SolveSquare(std::vector<RationalVector> a,
                                                 RationalVector b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline int ExactRank(std::vector<RationalVector> a) {
  if (a.empty()) return 0;
  const int cols = static_cast<int>(a[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < static_cast<int>(a.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(a.size()); ++r) {
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int r = rank + 1; r < static_cast<int>(a.size()); ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[rank][col];
      for (int k = col; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Vertex enumeration.

struct Halfspace {
  RationalVector coeffs;
  Relation relation;
  Rational rhs;
};

inline bool Satisfies(const Halfspace& h, const RationalVector& x) {
  const Rational lhs = Dot(h.coeffs, x);
  switch (h.relation) {
    case Relation::kLessEqual:
      return lhs <= h.rhs;
    case Relation::kEqual:
      return lhs == h.rhs;
    case Relation::kGreaterEqual:
      return lhs >= h.rhs;
  }
  return false;
}

// Every vertex of a pointed polyhedron in dimension n. Bases are grown row by
// row with incremental elimination in double, so a row dependent on the rows
// already chosen prunes the whole branch. A maximal independent set of
// equality rows starts every basis, since any vertex can extend it to n
// independent tight rows. Surviving candidates are screened for gross
// infeasibility, then re-solved and re-checked exactly.
inline std::vector<RationalVector> EnumerateVertices(
    const std::vector<Halfspace>& hs, int n) {
  std::vector<RationalVector> out;
  const int m = static_cast<int>(hs.size());
  std::vector<std::vector<double>> ad(m, std::vector<double>(n));
  std::vector<double> bd(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) ad[i][j] = hs[i].coeffs[j].get_d();
    bd[i] = hs[i].rhs.get_d();
  }

  // Echelon rows (coefficients then rhs) with their pivot columns.
  std::vector<std::vector<double>> ech(n, std::vector<double>(n + 1));
  std::vector<int> pivot(n);
  std::vector<int> chosen;
  auto push = [&](int i) {
    const int k = static_cast<int>(chosen.size());
    std::vector<double>& r = ech[k];
    for (int j = 0; j < n; ++j) r[j] = ad[i][j];
    r[n] = bd[i];
    for (int q = 0; q < k; ++q) {
      const double f = r[pivot[q]] / ech[q][pivot[q]];
      if (f == 0) continue;
      for (int j = 0; j <= n; ++j) r[j] -= f * ech[q][j];
    }
    double scale = 0;
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(ad[i][j]));
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (best < 0 || std::fabs(r[j]) > std::fabs(r[best])) best = j;
    }
    if (best < 0 || std::fabs(r[best]) <= 1e-9 * std::max(1.0, scale)) {
      return false;
    }
    pivot[k] = best;
    chosen.push_back(i);
    return true;
  };

  std::vector<bool> forced(m, false);
  for (int i = 0; i < m; ++i) {
    if (hs[i].relation == Relation::kEqual &&
        static_cast<int>(chosen.size()) < n && push(i)) {
      forced[i] = true;
    }
  }

  std::vector<double> x(n);
  auto visit_leaf = [&]() {
    for (int q = n - 1; q >= 0; --q) {
      double v = ech[q][n];
      for (int r = q + 1; r < n; ++r) v -= ech[q][pivot[r]] * x[pivot[r]];
      x[pivot[q]] = v / ech[q][pivot[q]];
    }
    for (int i = 0; i < m; ++i) {
      double lhs = 0;
      for (int j = 0; j < n; ++j) lhs += ad[i][j] * x[j];
      const double tol = 1e-6 * (1 + std::fabs(bd[i]));
      switch (hs[i].relation) {
        case Relation::kLessEqual:
          if (lhs > bd[i] + tol) return;
          break;
        case Relation::kGreaterEqual:
          if (lhs < bd[i] - tol) return;
          break;
        case Relation::kEqual:
          if (std::fabs(lhs - bd[i]) > tol) return;
          break;
      }
    }
    std::vector<RationalVector> a(n);
    RationalVector b(n);
    for (int r = 0; r < n; ++r) {
      a[r] = hs[chosen[r]].coeffs;
      b[r] = hs[chosen[r]].rhs;
    }
    if (auto xe = SolveSquare(a, b)) {
      for (const auto& h : hs) {
        if (!Satisfies(h, *xe)) return;
      }
      if (std::find(out.begin(), out.end(), *xe) == out.end()) {
        out.push_back(*xe);
      }
    }
  };

  std::function<void(int)> grow = [&](int from) {
    if (static_cast<int>(chosen.size()) == n) {
      visit_leaf();
      return;
    }
    const int need = n - static_cast<int>(chosen.size());
    for (int i = from; i + need <= m; ++i) {
      if (forced[i] || !push(i)) continue;
      grow(i + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return out;
}

struct OracleVerdict {
  LpStatus status;
  Rational value;
};

// Requires a finite lower bound on every variable so the feasible region is
// pointed. Unboundedness is decided on the recession cone normalized by
// sum(d) = 1, which is a polytope and therefore also enumerable.
inline OracleVerdict VertexOracle(const LinearProgram& lp) {
  const int n = lp.num_variables();
  std::vector<Halfspace> hs;
  for (const auto& r : lp.rows) hs.push_back({r.coeffs, r.relation, r.rhs});
  for (int j = 0; j < n; ++j) {
    RationalVector e(n);
    e[j] = 1;
    if (!lp.lower.empty() && lp.lower[j]) {
      hs.push_back({e, Relation::kGreaterEqual, *lp.lower[j]});
    }
    if (!lp.upper.empty() && lp.upper[j]) {
      hs.push_back({e, Relation::kLessEqual, *lp.upper[j]});
    }
  }
  const auto vertices = EnumerateVertices(hs, n);
  if (vertices.empty()) return {LpStatus::kInfeasible, 0};

  RationalVector c = lp.objective;
  if (lp.sense == Sense::kMaximize) {
    for (auto& v : c) v = -v;
  }
  std::vector<Halfspace> cone;
  for (const auto& h : hs) cone.push_back({h.coeffs, h.relation, 0});
  cone.push_back({RationalVector(n, Rational(1)), Relation::kEqual, 1});
  for (const auto& d : EnumerateVertices(cone, n)) {
    if (Dot(c, d) < 0) return {LpStatus::kUnbounded, 0};
  }
  Rational best = Dot(c, vertices[0]);
  for (const auto& v : vertices) best = std::min(best, Dot(c, v));
  if (lp.sense == Sense::kMaximize) best = -best;
  return {LpStatus::kOptimal, best};
}

// ---------------------------------------------------------------------------
// Random instances.

inline Rational RandomRational(std::mt19937_64& rng, int max_abs_num,
                               int max_den) {
  std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Fraction(num(rng), den(rng));
}

// Full-cooperation game with integer values uniformly in [lo, hi].
inline Game RandomGame(std::mt19937_64& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::unordered_map<Coalition, Rational, CoalitionHash> values;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    values[Coalition(m)] = val(rng);
  }
  return Game::FullFromSparse(n, values);
}

// Balanced by construction: a random integer point x0 is placed in the core
// by setting v(S) = x0(S) - slack_S with slack_S >= 0 and v(N) = x0(N).
inline Game RandomBalancedGame(std::mt19937_64& rng, int n, int max_slack = 4) {
  std::uniform_int_distribution<int> coord(0, 6);
  std::uniform_int_distribution<int> slack(0, max_slack);
  std::vector<int> x0(n);
  for (auto& x : x0) x = coord(rng);
  std::unordered_map<Coalition, Rational, CoalitionHash> values;
  const Coalition grand = Coalition::Grand(n);
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    const Coalition s(m);
    int sum = 0;
    for (int p : s.Members()) sum += x0[p];
    values[s] = s == grand ? sum : sum - slack(rng);
  }
  return Game::FullFromSparse(n, values);
}

// Random partition of {0..n-1} into at least two blocks.
inline std::vector<Coalition> RandomPartition(std::mt19937_64& rng, int n) {
  for (;;) {
    std::uniform_int_distribution<int> block(0, n - 1);
    std::vector<std::uint64_t> masks(n, 0);
    for (int p = 0; p < n; ++p) masks[block(rng)] |= std::uint64_t{1} << p;
    std::vector<Coalition> out;
    for (auto m : masks) {
      if (m != 0) out.emplace_back(m);
    }
    if (out.size() >= 2) return out;
  }
}

// Restricted family whose A* is a union of one to three random partitions of
// N, hence balanced.
inline std::vector<Coalition> RandomBalancedFamily(std::mt19937_64& rng,
                                                   int n) {
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<Coalition> out;
  for (int k = count(rng); k > 0; --k) {
    for (Coalition s : RandomPartition(rng, n)) out.push_back(s);
  }
  SortCanonical(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Random coalitions that all avoid one player, so A* cannot be balanced.
inline std::vector<Coalition> RandomUncoveringFamily(std::mt19937_64& rng,
                                                     int n) {
  std::uniform_int_distribution<int> player(0, n - 1);
  const int missing = player(rng);
  const Coalition rest = Coalition::Grand(n).Minus(Coalition::Of({missing}));
  std::uniform_int_distribution<std::uint64_t> pick(1, rest.mask());
  std::vector<Coalition> out;
  for (int k = 0; k < 2 * n; ++k) {
    const Coalition s(pick(rng) & rest.mask());
    if (!s.empty()) out.push_back(s);
  }
  if (out.empty()) out.push_back(rest);
  SortCanonical(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Game on the given family with integer values in [lo, hi].
inline Game RandomGameOn(std::mt19937_64& rng, int n,
                         const std::vector<Coalition>& coalitions, int lo,
                         int hi) {
  std::uniform_int_distribution<int> val(lo, hi);
  FeasibleFamily family = FeasibleFamily::Restricted(n, coalitions);
  std::unordered_map<Coalition, Rational, CoalitionHash> values;
  for (Coalition s : family.coalitions()) {
    if (!s.empty()) values[s] = val(rng);
  }
  return Game(std::move(family), values);
}

// Nonzero zero-sum direction with rational entries and max |d_i| >= 1e-3.
inline RationalVector RandomZeroSumDirection(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-50, 50);
  for (;;) {
    RationalVector d(n);
    Rational sum = 0;
    for (int i = 0; i + 1 < n; ++i) {
      d[i] = Fraction(num(rng), 100);
      sum += d[i];
    }
    d[n - 1] = -sum;
    Rational biggest = 0;
    for (const auto& x : d) biggest = std::max(biggest, Rational(abs(x)));
    if (biggest >= Fraction(1, 1000)) return d;
  }
}

// ---------------------------------------------------------------------------
// Brute-force prenucleolus for three players by lexicographic grid search
// over the preimputation plane, x3 = v(N) - x1 - x2.

inline std::vector<double> SortedExcesses(const Game& game,
                                          const std::vector<double>& x) {
  std::vector<double> e;
  for (Coalition s : game.family().nontrivial()) {
    double sum = 0;
    for (int p : s.Members()) sum += x[p];
    e.push_back(game.Value(s).get_d() - sum);
  }
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

struct GridBox {
  double lo1, hi1, lo2, hi2;
};

inline std::vector<double> GridSearchPrenucleolus3(const Game& game,
                                                   GridBox box) {
  const double vn = game.GrandValue().get_d();
  std::vector<double> best_x;
  std::vector<double> best_e;
  auto scan = [&](GridBox b, double step) {
    for (double x1 = b.lo1; x1 <= b.hi1 + 1e-15; x1 += step) {
      for (double x2 = b.lo2; x2 <= b.hi2 + 1e-15; x2 += step) {
        std::vector<double> x = {x1, x2, vn - x1 - x2};
        auto e = SortedExcesses(game, x);
        if (best_x.empty() || e < best_e) {
          best_x = std::move(x);
          best_e = std::move(e);
        }
      }
    }
  };
  scan(box, std::ldexp(1.0, -6));
  for (int exp : {-9, -12}) {
    const double coarse = std::ldexp(1.0, exp + 3);
    const GridBox window{best_x[0] - coarse, best_x[0] + coarse,
                         best_x[1] - coarse, best_x[1] + coarse};
    scan(window, std::ldexp(1.0, exp));
  }
  return best_x;
}

}  // namespace ucoop::testing

#endif  // UCOOP_TESTS_ORACLES_H_
