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

#include "ucoop/assignment.h"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "ucoop/errors.h"
#include "ucoop/essential.h"
#include "ucoop/utility.h"

namespace ucoop {
namespace {

using PairList = std::vector<std::pair<int, int>>;

class BruteForce {
 public:
  BruteForce(const AssignmentSpec& spec, const std::vector<int>& buyers,
             const std::vector<int>& sellers)
      : spec_(spec), buyers_(buyers), sellers_(sellers),
        used_(sellers.size(), false) {}

  Matching Run() {
    Visit(0, Rational(0));
    return {best_pairs_, best_value_};
  }

 private:
  void Visit(std::size_t b, const Rational& value) {
    if (b == buyers_.size()) {
      if (!seen_ || value > best_value_ ||
          (value == best_value_ && current_ < best_pairs_)) {
        seen_ = true;
        best_value_ = value;
        best_pairs_ = current_;
      }
      return;
    }
    Visit(b + 1, value);
    for (std::size_t s = 0; s < sellers_.size(); ++s) {
      if (used_[s]) continue;
      used_[s] = true;
      current_.emplace_back(buyers_[b], sellers_[s]);
      Visit(b + 1, value + spec_.profit(buyers_[b], sellers_[s]));
      current_.pop_back();
      used_[s] = false;
    }
  }

  const AssignmentSpec& spec_;
  const std::vector<int>& buyers_;
  const std::vector<int>& sellers_;
  std::vector<bool> used_;
  PairList current_;
  bool seen_ = false;
  Rational best_value_;
  PairList best_pairs_;
};

// Maximum total profit by the Hungarian method on the zero-padded square
// matrix, minimizing negated profits with exact potentials.
Rational HungarianValue(const AssignmentSpec& spec,
                        const std::vector<int>& buyers,
                        const std::vector<int>& sellers) {
  const int k = static_cast<int>(std::max(buyers.size(), sellers.size()));
  if (k == 0 || buyers.empty() || sellers.empty()) return 0;
  auto cost = [&](int i, int j) -> Rational {
    if (i >= static_cast<int>(buyers.size()) ||
        j >= static_cast<int>(sellers.size())) {
      return 0;
    }
    return -spec.profit(buyers[i], sellers[j]);
  };
  // 1-based rows and columns; p[j] is the row assigned to column j.
  std::vector<Rational> u(k + 1), v(k + 1);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::optional<Rational>> minv(k + 1);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      std::optional<Rational> delta;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        Rational cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = std::move(cur);
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Rational total = 0;
  for (int j = 1; j <= k; ++j) total -= cost(p[j] - 1, j - 1);
  return total;
}

// The lexicographically smallest optimal pair list, built one pair at a time
// against the optimal value of what remains.
Matching HungarianMatching(const AssignmentSpec& spec,
                           const std::vector<int>& buyers,
                           const std::vector<int>& sellers) {
  Matching m;
  m.value = HungarianValue(spec, buyers, sellers);
  Rational current = 0;
  std::vector<int> open_buyers = buyers;
  std::vector<int> open_sellers = sellers;
  while (current != m.value) {
    bool placed = false;
    for (std::size_t bi = 0; bi < open_buyers.size() && !placed; ++bi) {
      const std::vector<int> later(open_buyers.begin() + bi + 1,
                                   open_buyers.end());
      for (std::size_t si = 0; si < open_sellers.size(); ++si) {
        std::vector<int> rest = open_sellers;
        rest.erase(rest.begin() + si);
        const int b = open_buyers[bi];
        const int s = open_sellers[si];
        const Rational gain = spec.profit(b, s);
        if (current + gain + HungarianValue(spec, later, rest) != m.value) {
          continue;
        }
        m.pairs.emplace_back(b, s);
        current += gain;
        open_buyers = later;
        open_sellers = std::move(rest);
        placed = true;
        break;
      }
    }
    if (!placed) throw InternalError("matching reconstruction failed");
  }
  return m;
}

std::vector<int> Sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

AssignmentSpec::AssignmentSpec(std::vector<std::vector<Rational>> profits)
    : profits_(std::move(profits)) {
  if (profits_.empty() || profits_.front().empty()) {
    throw InvalidGame("profit matrix must be nonempty");
  }
  const std::size_t cols = profits_.front().size();
  for (const auto& row : profits_) {
    if (row.size() != cols) throw InvalidGame("profit matrix is ragged");
    for (const auto& a : row) {
      if (a < 0) throw InvalidGame("profits must be nonnegative");
    }
  }
  if (buyers() + sellers() > kMaxPlayers) {
    throw TooManyPlayers(std::to_string(buyers() + sellers()) +
                         " players exceed " + std::to_string(kMaxPlayers));
  }
}

Coalition AssignmentSpec::AllBuyers() const {
  return Coalition((std::uint64_t{1} << buyers()) - 1);
}

Coalition AssignmentSpec::AllSellers() const {
  return Coalition(((std::uint64_t{1} << sellers()) - 1) << buyers());
}

Matching MaxWeightMatching(const AssignmentSpec& spec,
                           const std::vector<int>& buyers,
                           const std::vector<int>& sellers,
                           MatchingMethod method) {
  const std::vector<int> b = Sorted(buyers);
  const std::vector<int> s = Sorted(sellers);
  for (int i : b) {
    if (i < 0 || i >= spec.buyers()) throw InvalidGame("buyer out of range");
  }
  for (int j : s) {
    if (j < 0 || j >= spec.sellers()) throw InvalidGame("seller out of range");
  }
  if (method == MatchingMethod::kAuto) {
    method = static_cast<int>(b.size()) <= kBruteForceSide &&
                     static_cast<int>(s.size()) <= kBruteForceSide
                 ? MatchingMethod::kBruteForce
                 : MatchingMethod::kHungarian;
  }
  if (method == MatchingMethod::kBruteForce) return BruteForce(spec, b, s).Run();
  return HungarianMatching(spec, b, s);
}

Rational CoalitionWorth(const AssignmentSpec& spec, Coalition s,
                        MatchingMethod method) {
  std::vector<int> buyers, sellers;
  for (int p : s.Members()) {
    if (p < spec.buyers()) {
      buyers.push_back(p);
    } else {
      sellers.push_back(p - spec.buyers());
    }
  }
  if (buyers.empty() || sellers.empty()) return 0;
  if (method == MatchingMethod::kHungarian ||
      (method == MatchingMethod::kAuto &&
       (static_cast<int>(buyers.size()) > kBruteForceSide ||
        static_cast<int>(sellers.size()) > kBruteForceSide))) {
    return HungarianValue(spec, buyers, sellers);
  }
  return MaxWeightMatching(spec, buyers, sellers, method).value;
}

Game BuildGame(const AssignmentSpec& spec) {
  const int n = spec.num_players();
  if (n > kMaxFullPlayers) {
    throw TooManyPlayers(std::to_string(n) + " players exceed " +
                         std::to_string(kMaxFullPlayers) +
                         " for a materialized game");
  }
  std::unordered_map<Coalition, Rational, CoalitionHash> values;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Rational w = CoalitionWorth(spec, Coalition(mask));
    if (w != 0) values.emplace(Coalition(mask), std::move(w));
  }
  return Game::FullFromSparse(n, values);
}

bool IsMixedPair(const AssignmentSpec& spec, Coalition s) {
  return s.size() == 2 && s.Intersects(spec.AllBuyers()) &&
         s.Intersects(spec.AllSellers());
}

AssignmentStructureReport VerifyEssentialStructure(const AssignmentSpec& spec) {
  const Game game = BuildGame(spec);
  const EssentialReport er =
      UEssential(game, AffineUtility::ReciprocalPercapita());
  AssignmentStructureReport r;
  r.u_essential = er.u_essential;
  for (Coalition s : r.u_essential) {
    if (s.size() == 1) continue;
    if (IsMixedPair(spec, s)) {
      const std::vector<int> m = s.Members();
      r.essential_pairs.emplace_back(m[0], m[1] - spec.buyers());
    } else {
      r.violations.push_back(s);
    }
  }
  std::sort(r.essential_pairs.begin(), r.essential_pairs.end());
  r.bound = spec.buyers() + spec.sellers() + spec.buyers() * spec.sellers();
  r.inclusion_holds = r.violations.empty();
  r.bound_holds = static_cast<int>(r.u_essential.size()) <= r.bound;
  return r;
}

}  // namespace ucoop
