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

// Fixed games shared by several tests. Players are 0-based here; comments
// use the 1-based names printed by Coalition::ToString.

#ifndef UCOOP_TESTS_TEST_GAMES_H_
#define UCOOP_TESTS_TEST_GAMES_H_

#include <initializer_list>
#include <string>
#include <vector>

#include "ucoop/game.h"

namespace ucoop::testing {

inline Coalition C(std::initializer_list<int> one_based) {
  std::vector<int> m;
  for (int p : one_based) m.push_back(p - 1);
  return Coalition::FromMembers(m);
}

// Four players: v(N) = 12, v(12) = v(34) = v(234) = 6, v(14) = 4, v(4) = 3,
// v(123) = 9, zero elsewhere.
inline Game ExampleGame() {
  return Game::FullFromSparse(4, {{C({1, 2, 3, 4}), 12},
                                  {C({1, 2}), 6},
                                  {C({3, 4}), 6},
                                  {C({2, 3, 4}), 6},
                                  {C({1, 4}), 4},
                                  {C({4}), 3},
                                  {C({1, 2, 3}), 9}});
}

// The eight classically essential coalitions of ExampleGame.
inline std::vector<Coalition> ExampleClassicalEssential() {
  return {C({1}), C({2}), C({3}), C({4}), C({1, 2}), C({3, 4}), C({1, 4}),
          C({1, 2, 3})};
}

// Two players, v(1) = v(2) = 0, v(N) = 2.
inline Game SymmetricPair() {
  return Game::FullFromSparse(2, {{C({1, 2}), 2}});
}

// Three players, v(N) = 1 and every pair worth 1: empty core.
inline Game PairsWorthOne() {
  return Game::FullFromSparse(
      3, {{C({1, 2, 3}), 1}, {C({1, 2}), 1}, {C({2, 3}), 1}, {C({1, 3}), 1}});
}

// v(S) = sum of weights over S.
inline Game AdditiveGame(const std::vector<int>& weights) {
  const int n = static_cast<int>(weights.size());
  std::unordered_map<Coalition, Rational, CoalitionHash> values;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    Rational sum = 0;
    for (int p : Coalition(m).Members()) sum += weights[p];
    values[Coalition(m)] = sum;
  }
  return Game::FullFromSparse(n, values);
}

inline std::vector<Coalition> Sorted(std::vector<Coalition> v) {
  SortCanonical(v);
  return v;
}

}  // namespace ucoop::testing

#endif  // UCOOP_TESTS_TEST_GAMES_H_
