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

#include <random>

#include "doctest.h"
#include "lp_checks.h"
#include "oracles.h"
#include "test_games.h"
#include "ucoop/errors.h"

namespace ucoop {
namespace {

using testing::CheckCertificates;

LpRow Row(RationalVector a, Relation r, Rational b) {
  return LpRow{std::move(a), r, std::move(b)};
}

TEST_CASE("single binding lower row") {
  LinearProgram lp;
  lp.objective = {1};
  lp.rows = {Row({1}, Relation::kGreaterEqual, 3)};
  for (auto route : {LpRoute::kPrimal, LpRoute::kDual, LpRoute::kAuto}) {
    const LpSolution s = Solve(lp, {route});
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.primal[0] == 3);
    CHECK(s.objective_value == 3);
    CHECK(s.dual[0] == 1);
    CHECK(CheckCertificates(lp, s) == "");
  }
}

TEST_CASE("contradictory rows are infeasible with a Farkas certificate") {
  LinearProgram lp;
  lp.objective = {1};
  lp.rows = {Row({1}, Relation::kLessEqual, 1),
             Row({1}, Relation::kGreaterEqual, 2)};
  for (auto route : {LpRoute::kPrimal, LpRoute::kDual}) {
    const LpSolution s = Solve(lp, {route});
    REQUIRE(s.status == LpStatus::kInfeasible);
    CHECK(CheckCertificates(lp, s) == "");
  }
}

TEST_CASE("free variable unbounded below") {
  LinearProgram lp;
  lp.objective = {1, 1};
  lp.rows = {Row({1, -1}, Relation::kLessEqual, 4)};
  for (auto route : {LpRoute::kPrimal, LpRoute::kDual}) {
    const LpSolution s = Solve(lp, {route});
    REQUIRE(s.status == LpStatus::kUnbounded);
    CHECK(CheckCertificates(lp, s) == "");
  }
}

TEST_CASE("bounds without rows") {
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  lp.objective = {2, -1};
  lp.lower = {Rational(-1), Rational(-3)};
  lp.upper = {Rational(5, 2), std::nullopt};
  for (auto route : {LpRoute::kPrimal, LpRoute::kDual}) {
    const LpSolution s = Solve(lp, {route});
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.objective_value == 8);
    CHECK(CheckCertificates(lp, s) == "");
  }
}

TEST_CASE("wrong row length is malformed") {
  LinearProgram lp;
  lp.objective = {1, 2};
  lp.rows = {Row({1}, Relation::kGreaterEqual, 0)};
  CHECK_THROWS_AS(Solve(lp), MalformedProgram);
}

TEST_CASE("empty program") {
  LinearProgram lp;
  const LpSolution s = Solve(lp);
  CHECK(s.status == LpStatus::kOptimal);
  CHECK(s.objective_value == 0);
}

std::vector<LpRow> CoreRowsOfExampleGame() {
  const Game g = testing::ExampleGame();
  std::vector<LpRow> rows;
  for (Coalition s : g.family().nontrivial()) {
    rows.push_back(Row(Indicator(s, 4), Relation::kGreaterEqual, g.Value(s)));
  }
  rows.push_back(Row(Indicator(g.grand(), 4), Relation::kEqual, g.GrandValue()));
  return rows;
}

TEST_CASE("direction probes over the example core") {
  const auto rows = CoreRowsOfExampleGame();
  auto probe = [&](int j, Sense sense) {
    RationalVector d(4);
    d[j] = 1;
    const LpSolution s = OptimizeDirection(rows, d, sense);
    REQUIRE(s.status == LpStatus::kOptimal);
    return s.objective_value;
  };
  CHECK(probe(0, Sense::kMaximize) == 6);
  CHECK(probe(0, Sense::kMinimize) == 1);
  CHECK(probe(2, Sense::kMaximize) == 3);
  CHECK(probe(2, Sense::kMinimize) == 3);
  CHECK(probe(3, Sense::kMaximize) == 3);
}

TEST_CASE("minimum grand total over the example core rows") {
  const Game g = testing::ExampleGame();
  LinearProgram lp;
  lp.objective = Indicator(g.grand(), 4);
  for (Coalition s : g.family().nontrivial()) {
    lp.rows.push_back(Row(Indicator(s, 4), Relation::kGreaterEqual, g.Value(s)));
  }
  lp.rows.push_back(
      Row(Indicator(g.grand(), 4), Relation::kGreaterEqual, g.GrandValue()));
  for (auto route : {LpRoute::kPrimal, LpRoute::kDual}) {
    const LpSolution s = Solve(lp, {route});
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.objective_value == 12);
    CHECK(CheckCertificates(lp, s) == "");
  }
}

TEST_CASE("degenerate cycling example terminates") {
  // Beale's example, which cycles under the textbook largest-coefficient rule.
  LinearProgram lp;
  lp.objective = {Rational(-3, 4), 150, Rational(-1, 50), 6};
  lp.rows = {
      Row({Rational(1, 4), -60, Rational(-1, 25), 9}, Relation::kLessEqual, 0),
      Row({Rational(1, 2), -90, Rational(-1, 50), 3}, Relation::kLessEqual, 0),
      Row({0, 0, 1, 0}, Relation::kLessEqual, 1)};
  lp.lower.assign(4, Rational(0));
  lp.upper.assign(4, std::nullopt);
  const LpSolution s = Solve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective_value == Rational(-1, 20));
  CHECK(CheckCertificates(lp, s) == "");
}

TEST_CASE("random programs agree with vertex enumeration on both routes") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 120; ++trial) {
    const LinearProgram lp = testing::RandomLp(rng);
    const auto oracle = testing::VertexOracle(lp);
    for (auto route : {LpRoute::kPrimal, LpRoute::kDual}) {
      CAPTURE(trial);
      CAPTURE(static_cast<int>(route));
      const LpSolution s = Solve(lp, {route});
      REQUIRE(s.status == oracle.status);
      if (s.status == LpStatus::kOptimal) {
        CHECK(s.objective_value == oracle.value);
      }
      CHECK(CheckCertificates(lp, s) == "");
    }
  }
}

TEST_CASE("random free-variable programs: routes agree") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    LinearProgram lp = testing::RandomLp(rng);
    lp.lower.clear();
    lp.upper.clear();
    const LpSolution a = Solve(lp, {LpRoute::kPrimal});
    const LpSolution b = Solve(lp, {LpRoute::kDual});
    CAPTURE(trial);
    REQUIRE(a.status == b.status);
    if (a.status == LpStatus::kOptimal) {
      CHECK(a.objective_value == b.objective_value);
    }
    CHECK(CheckCertificates(lp, a) == "");
    CHECK(CheckCertificates(lp, b) == "");
  }
}

}  // namespace
}  // namespace ucoop
