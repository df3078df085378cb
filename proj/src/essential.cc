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

#include "ucoop/essential.h"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "ucoop/core.h"
#include "ucoop/errors.h"
#include "ucoop/lp.h"

namespace ucoop {
namespace {

bool PartitionLess(const Partition& a, const Partition& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      CanonicalOrder());
}

// Extends `prefix` by parts of `rest`, each containing the lowest remaining
// member.
template <typename Accept>
void Extend(Coalition base, Coalition rest, Partition& prefix,
            const Accept& accept, std::vector<Partition>& out) {
  if (rest.empty()) {
    if (prefix.size() >= 2) out.push_back(prefix);
    return;
  }
  const std::uint64_t low = std::uint64_t{1} << rest.Lowest();
  const std::uint64_t others = rest.mask() & ~low;
  // Submasks of `others`, each joined with the lowest member.
  std::uint64_t sub = others;
  while (true) {
    const Coalition part(sub | low);
    if (part != base && accept(part)) {
      prefix.push_back(part);
      Extend(base, Coalition(rest.mask() & ~part.mask()), prefix, accept, out);
      prefix.pop_back();
    }
    if (sub == 0) break;
    sub = (sub - 1) & others;
  }
}

template <typename Accept>
std::vector<Partition> Partitions(Coalition s, const Accept& accept) {
  if (s.size() > kMaxPartitionBase) {
    throw PartitionLimitExceeded(s.ToString() + " has more than " +
                                 std::to_string(kMaxPartitionBase) +
                                 " members");
  }
  std::vector<Partition> out;
  Partition prefix;
  Extend(s, s, prefix, accept, out);
  std::sort(out.begin(), out.end(), PartitionLess);
  return out;
}

Rational AffineUExcess(const AffineUtility& u, const Game& game, Coalition s,
                       const Payoff& x) {
  const auto [a, b] = u.Coefficients(s);
  return a * (game.Value(s) - CoalitionSum(x, s)) + b;
}

// Row over (x, delta):
//   u_S(v(S) - x(S)) - sum_T u_T(v(T) - x(T)) - delta >= 0.
LpRow SlackRow(const Game& game, const AffineUtility& u, Coalition s,
               const Partition& parts) {
  const int n = game.num_players();
  LpRow row;
  row.coeffs.assign(n + 1, Rational(0));
  const auto [as, bs] = u.Coefficients(s);
  for (int i : s.Members()) row.coeffs[i] -= as;
  row.rhs = -(as * game.Value(s) + bs);
  for (Coalition t : parts) {
    const auto [at, bt] = u.Coefficients(t);
    for (int i : t.Members()) row.coeffs[i] += at;
    row.rhs += at * game.Value(t) + bt;
  }
  row.coeffs[n] = -1;
  row.relation = Relation::kGreaterEqual;
  return row;
}

}  // namespace

const char* ToString(EssentialEvidence::Kind kind) {
  switch (kind) {
    case EssentialEvidence::Kind::kNoFeasiblePartition:
      return "no-feasible-partition";
    case EssentialEvidence::Kind::kSlack:
      return "slack";
    case EssentialEvidence::Kind::kDominated:
      return "dominated";
    case EssentialEvidence::Kind::kEmptyUCore:
      return "empty-u-core";
  }
  return "?";
}

PartitionFamily EnumeratePartitions(const FeasibleFamily& family, Coalition s) {
  const Coalition grand = family.grand();
  PartitionFamily pf;
  pf.base = s;
  pf.partitions = Partitions(s, [&](Coalition t) {
    return t != grand && family.Contains(t);
  });
  return pf;
}

std::vector<Coalition> ClassicalEssential(const Game& game) {
  if (!game.family().is_full()) {
    throw RestrictedFamilyUnsupported(
        "classical essential coalitions need full cooperation");
  }
  const std::uint64_t full = game.grand().mask();
  // best[S]: largest sum of v over partitions of S into one or more parts;
  // split[S]: the same over partitions into at least two parts.
  std::vector<Rational> best(full + 1);
  std::vector<Coalition> out;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    const Coalition s(mask);
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t others = mask & ~low;
    std::optional<Rational> split;
    for (std::uint64_t sub = (others - 1) & others;; sub = (sub - 1) & others) {
      // Proper part containing the lowest member; sub == others is S itself.
      const std::uint64_t part = sub | low;
      Rational total = game.Value(Coalition(part)) + best[mask & ~part];
      if (!split || total > *split) split = std::move(total);
      if (sub == 0) break;
    }
    if (others == 0) split.reset();
    const Rational& value = game.Value(s);
    best[mask] = split && *split > value ? *split : value;
    if (mask == full) break;
    if (s.size() == 1 || value > *split) out.push_back(s);
  }
  SortCanonical(out);
  return out;
}

std::optional<Partition> DominatingPartition(
    const Game& game, const AffineUtility& u, Coalition s, const Payoff& x,
    const std::vector<Coalition>& essential) {
  const std::unordered_set<Coalition, CoalitionHash> allowed(essential.begin(),
                                                             essential.end());
  const Rational target = AffineUExcess(u, game, s, x);
  std::optional<Partition> best;
  std::optional<Rational> best_sum;
  for (const Partition& p : Partitions(s, [&](Coalition t) {
         return allowed.count(t) > 0;
       })) {
    Rational sum = 0;
    for (Coalition t : p) sum += AffineUExcess(u, game, t, x);
    if (sum < target) continue;
    if (!best_sum || sum > *best_sum) {
      best = p;
      best_sum = std::move(sum);
    }
  }
  return best;
}

EssentialReport UEssential(const Game& game, const UtilityFamily& u) {
  if (!u.is_affine()) {
    throw GeneralUtilityUnsupported(
        "u-essential coalitions need an affine utility");
  }
  const AffineUtility& au = u.affine();
  const int n = game.num_players();
  EssentialReport report;
  if (game.family().is_full()) report.classical = ClassicalEssential(game);

  const auto& nontrivial = game.family().nontrivial();
  const LevelSetPolytope core =
      LevelSetPolytope::Build(game, u, nontrivial, Rational(0));
  report.u_core_empty = core.IsEmpty();

  // u-core rows widened with a zero delta column.
  std::vector<LpRow> core_rows;
  for (LpRow row : core.rows()) {
    row.coeffs.push_back(0);
    core_rows.push_back(std::move(row));
  }

  std::vector<std::pair<Coalition, EssentialEvidence>> deferred;
  for (Coalition s : nontrivial) {
    const PartitionFamily pf = EnumeratePartitions(game.family(), s);
    EssentialEvidence ev;
    if (pf.partitions.empty()) {
      ev.kind = EssentialEvidence::Kind::kNoFeasiblePartition;
      report.u_essential.push_back(s);
      report.evidence.emplace_back(s, std::move(ev));
      continue;
    }
    if (report.u_core_empty) {
      ev.kind = EssentialEvidence::Kind::kEmptyUCore;
      report.evidence.emplace_back(s, std::move(ev));
      continue;
    }
    LinearProgram lp;
    lp.sense = Sense::kMaximize;
    lp.objective.assign(n + 1, Rational(0));
    lp.objective[n] = 1;
    lp.rows = core_rows;
    for (const Partition& p : pf.partitions) {
      lp.rows.push_back(SlackRow(game, au, s, p));
    }
    lp.lower.assign(n + 1, std::nullopt);
    lp.upper.assign(n + 1, std::nullopt);
    lp.upper[n] = Rational(1);
    const LpSolution sol = Solve(lp);
    if (sol.status != LpStatus::kOptimal) {
      throw InternalError("essentiality program for " + s.ToString() + " is " +
                          ToString(sol.status));
    }
    ev.witness = Payoff(sol.primal.begin(), sol.primal.begin() + n);
    ev.slack = sol.objective_value;
    if (*ev.slack > 0) {
      ev.kind = EssentialEvidence::Kind::kSlack;
      report.u_essential.push_back(s);
      report.evidence.emplace_back(s, std::move(ev));
    } else {
      ev.kind = EssentialEvidence::Kind::kDominated;
      deferred.emplace_back(s, std::move(ev));
      report.evidence.emplace_back(s, EssentialEvidence{});
    }
  }

  // Dominating partitions need the finished essential set.
  for (auto& [s, ev] : deferred) {
    if (auto p = DominatingPartition(game, au, s, *ev.witness,
                                     report.u_essential)) {
      ev.dominating = std::move(*p);
    }
    for (auto& entry : report.evidence) {
      if (entry.first == s) entry.second = std::move(ev);
    }
  }
  return report;
}

PrenucleolusResult RestrictAndSolve(const Game& game, const UtilityFamily& u,
                                    const LexCenterOptions& options) {
  if (!UBalanced(game, u).balanced) {
    throw NotUBalanced("the game is not u-balanced");
  }
  return SolveOverConstraintSet(game, u, UEssential(game, u).u_essential,
                                options);
}

PrenucleolusResult RestrictAndSolve(const Game& game, const UtilityFamily& u,
                                    const std::vector<Coalition>& essential,
                                    const LexCenterOptions& options) {
  if (!UBalanced(game, u).balanced) {
    throw NotUBalanced("the game is not u-balanced");
  }
  return SolveOverConstraintSet(game, u, essential, options);
}

}  // namespace ucoop
