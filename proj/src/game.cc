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

#include "ucoop/game.h"

#include <algorithm>
#include <utility>

#include "ucoop/errors.h"

namespace ucoop {

Coalition Coalition::Of(std::initializer_list<int> players) {
  return FromMembers(std::span<const int>(players.begin(), players.size()));
}

Coalition Coalition::FromMembers(std::span<const int> players) {
  std::uint64_t mask = 0;
  for (int p : players) {
    if (p < 0 || p >= kMaxPlayers) {
      throw InvalidGame("player index " + std::to_string(p) + " out of range");
    }
    mask |= std::uint64_t{1} << p;
  }
  return Coalition(mask);
}

std::vector<int> Coalition::Members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m));
  }
  return out;
}

std::string Coalition::ToString() const {
  std::string s = "{";
  bool first = true;
  for (int p : Members()) {
    if (!first) s += ",";
    s += std::to_string(p + 1);
    first = false;
  }
  return s + "}";
}

bool CanonicalOrder::operator()(Coalition a, Coalition b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a == b) return false;
  // The lowest differing player decides: whoever owns it sorts first.
  const std::uint64_t diff = a.mask() ^ b.mask();
  const int p = std::countr_zero(diff);
  return a.Contains(p);
}

void SortCanonical(std::vector<Coalition>& coalitions) {
  std::sort(coalitions.begin(), coalitions.end(), CanonicalOrder{});
}

Rational CoalitionSum(const Payoff& x, Coalition s) {
  Rational sum = 0;
  for (std::uint64_t m = s.mask(); m != 0; m &= m - 1) {
    sum += x[std::countr_zero(m)];
  }
  return sum;
}

RationalVector Indicator(Coalition s, int n) {
  RationalVector v(n);
  for (int i = 0; i < n; ++i) {
    if (s.Contains(i)) v[i] = 1;
  }
  return v;
}

FeasibleFamily::FeasibleFamily(int n, std::vector<Coalition> coalitions,
                               bool full)
    : n_(n), full_(full), all_(std::move(coalitions)) {
  SortCanonical(all_);
  all_.erase(std::unique(all_.begin(), all_.end()), all_.end());
  const Coalition grand = Coalition::Grand(n);
  for (std::size_t i = 0; i < all_.size(); ++i) {
    index_.emplace(all_[i], static_cast<int>(i));
    if (!all_[i].empty() && all_[i] != grand) nontrivial_.push_back(all_[i]);
  }
}

FeasibleFamily FeasibleFamily::Full(int n) {
  if (n < 1 || n > kMaxFullPlayers) {
    throw InvalidGame("full family needs 1 <= n <= " +
                      std::to_string(kMaxFullPlayers));
  }
  std::vector<Coalition> all;
  all.reserve(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    all.emplace_back(m);
  }
  return FeasibleFamily(n, std::move(all), true);
}

FeasibleFamily FeasibleFamily::Restricted(int n,
                                          std::vector<Coalition> coalitions) {
  if (n < 1 || n > kMaxPlayers) {
    throw InvalidGame("player count must be in [1, " +
                      std::to_string(kMaxPlayers) + "]");
  }
  const Coalition grand = Coalition::Grand(n);
  for (Coalition s : coalitions) {
    if (!s.IsSubsetOf(grand)) {
      throw InvalidGame("coalition " + s.ToString() + " not within N");
    }
  }
  coalitions.push_back(Coalition());
  coalitions.push_back(grand);
  const bool full =
      n <= kMaxFullPlayers && [&] {
        std::vector<Coalition> tmp = coalitions;
        std::sort(tmp.begin(), tmp.end());
        tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
        return tmp.size() == (std::size_t{1} << n);
      }();
  return FeasibleFamily(n, std::move(coalitions), full);
}

int FeasibleFamily::IndexOf(Coalition s) const {
  auto it = index_.find(s);
  if (it == index_.end()) {
    throw UnknownCoalition(s.ToString() + " is not a feasible coalition");
  }
  return it->second;
}

Game::Game(FeasibleFamily family,
           const std::unordered_map<Coalition, Rational, CoalitionHash>& values)
    : family_(std::move(family)), values_(family_.coalitions().size()) {
  for (const auto& [s, v] : values) {
    if (!family_.Contains(s)) {
      throw InvalidGame("value given for infeasible coalition " + s.ToString());
    }
    if (s.empty() && v != 0) throw InvalidGame("v(empty set) must be 0");
  }
  for (std::size_t i = 0; i < family_.coalitions().size(); ++i) {
    const Coalition s = family_.coalitions()[i];
    if (s.empty()) continue;
    auto it = values.find(s);
    if (it == values.end()) {
      throw InvalidGame("missing value for feasible coalition " + s.ToString());
    }
    values_[i] = it->second;
  }
}

Game Game::FullFromSparse(
    int n, const std::unordered_map<Coalition, Rational, CoalitionHash>& values) {
  FeasibleFamily family = FeasibleFamily::Full(n);
  std::unordered_map<Coalition, Rational, CoalitionHash> all;
  for (Coalition s : family.coalitions()) all[s] = 0;
  for (const auto& [s, v] : values) {
    if (!family.Contains(s)) {
      throw InvalidGame("coalition " + s.ToString() + " not within N");
    }
    all[s] = v;
  }
  return Game(std::move(family), all);
}

const Rational& Game::Value(Coalition s) const {
  return values_[family_.IndexOf(s)];
}

Rational Game::Excess(Coalition s, const Payoff& x) const {
  return Value(s) - CoalitionSum(x, s);
}

bool Game::IsPreimputation(const Payoff& x) const {
  if (static_cast<int>(x.size()) != num_players()) return false;
  return CoalitionSum(x, grand()) == GrandValue();
}

Game Game::Restrict(const std::vector<Coalition>& keep) const {
  FeasibleFamily sub = FeasibleFamily::Restricted(num_players(), keep);
  std::unordered_map<Coalition, Rational, CoalitionHash> values;
  for (Coalition s : sub.coalitions()) values[s] = Value(s);
  return Game(std::move(sub), values);
}

}  // namespace ucoop
