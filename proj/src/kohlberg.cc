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

#include "ucoop/kohlberg.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ucoop/errors.h"
#include "ucoop/lp.h"

namespace ucoop {

BalanceCheck CheckBalanced(int n, const std::vector<Coalition>& collection) {
  const Coalition grand = Coalition::Grand(n);
  for (Coalition s : collection) {
    if (s.empty() || s == grand) {
      throw TrivialCoalitionInCollection(s.ToString());
    }
    if (!s.IsSubsetOf(grand)) {
      throw InvalidGame(s.ToString() + " is not within N");
    }
  }
  BalanceCheck out;
  Coalition covered;
  for (Coalition s : collection) covered = covered | s;
  for (int i = 0; i < n; ++i) {
    if (!covered.Contains(i)) out.uncovered_players.push_back(i);
  }

  // Columns: lambda_0..k-1, mu, eps_0..k-1.
  const int k = static_cast<int>(collection.size());
  const int mu = k;
  const int cols = 2 * k + 1;
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  lp.objective.assign(cols, Rational(0));
  for (int c = 0; c < k; ++c) {
    lp.objective[k + 1 + c] = 1;
    LpRow row;
    row.coeffs.assign(cols, Rational(0));
    row.coeffs[k + 1 + c] = 1;
    row.coeffs[c] = -1;
    row.relation = Relation::kLessEqual;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    LpRow row;
    row.coeffs.assign(cols, Rational(0));
    for (int c = 0; c < k; ++c) {
      if (collection[c].Contains(i)) row.coeffs[c] = 1;
    }
    row.coeffs[mu] = -1;
    row.relation = Relation::kEqual;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  lp.lower.assign(cols, Rational(0));
  lp.upper.assign(cols, std::nullopt);
  for (int c = 0; c < k; ++c) lp.upper[k + 1 + c] = Rational(1);
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InternalError("balanced-collection program not optimal");
  }
  out.balanced = k > 0 && sol.objective_value == k;
  if (out.balanced) {
    const Rational& scale = sol.primal[mu];
    for (int c = 0; c < k; ++c) {
      out.certificate.weights.emplace_back(collection[c],
                                           sol.primal[c] / scale);
    }
    return out;
  }
  for (int c = 0; c < k; ++c) {
    if (sol.primal[k + 1 + c] == 0) out.forced_zero.push_back(collection[c]);
  }
  return out;
}

std::optional<BalancedCertificate> IsBalancedCollection(
    int n, const std::vector<Coalition>& collection) {
  BalanceCheck check = CheckBalanced(n, collection);
  if (!check.balanced) return std::nullopt;
  return std::move(check.certificate);
}

KohlbergReport KohlbergCheck(const Game& game, const UtilityFamily& u,
                             const Payoff& x) {
  KohlbergReport report;
  report.approximate = !u.is_affine();
  if (!game.IsPreimputation(x)) {
    report.is_preimputation = false;
    return report;
  }
  const auto& nontrivial = game.family().nontrivial();
  std::vector<std::pair<Rational, Coalition>> scored;
  for (Coalition s : nontrivial) scored.emplace_back(UExcess(u, game, s, x), s);
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  // Group into levels; general utilities merge values within tolerance of
  // the level's first (largest) value.
  std::vector<Rational> alphas;
  for (const auto& [value, s] : scored) {
    if (alphas.empty()) {
      alphas.push_back(value);
      continue;
    }
    const bool same =
        u.is_affine()
            ? value == alphas.back()
            : std::abs(ToDouble(alphas.back()) - ToDouble(value)) <=
                  kLevelTolerance;
    if (same) {
      if (!u.is_affine()) alphas.back() = value;
    } else {
      alphas.push_back(value);
    }
  }
  report.verdict = true;
  std::size_t next = 0;
  std::vector<Coalition> members;
  for (std::size_t l = 0; l < alphas.size(); ++l) {
    while (next < scored.size() && scored[next].first >= alphas[l]) {
      members.push_back(scored[next].second);
      ++next;
    }
    LevelReport level;
    level.alpha = alphas[l];
    level.coalitions = members;
    SortCanonical(level.coalitions);
    level.check = CheckBalanced(game.num_players(), level.coalitions);
    if (!level.check.balanced && report.verdict) {
      report.verdict = false;
      report.first_failing_level = static_cast<int>(l);
    }
    report.levels.push_back(std::move(level));
  }
  return report;
}

}  // namespace ucoop
