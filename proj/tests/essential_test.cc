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
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "test_games.h"
#include "ucoop/core.h"
#include "ucoop/errors.h"

namespace ucoop {
namespace {

using testing::C;
using testing::Sorted;

const UtilityFamily kIdentity = AffineUtility::Identity();
const UtilityFamily kPercapita = AffineUtility::Percapita();

// All set partitions of the members of s via restricted growth strings,
// including the one-block partition.
std::vector<std::vector<Coalition>> AllSetPartitions(Coalition s) {
  const std::vector<int> members = s.Members();
  const int k = static_cast<int>(members.size());
  std::vector<std::vector<Coalition>> out;
  std::vector<int> block(k, 0);
  for (;;) {
    const int blocks = k ? *std::max_element(block.begin(), block.end()) + 1 : 0;
    std::vector<std::uint64_t> masks(blocks, 0);
    for (int i = 0; i < k; ++i) masks[block[i]] |= std::uint64_t{1} << members[i];
    std::vector<Coalition> parts;
    for (auto m : masks) parts.emplace_back(m);
    out.push_back(parts);
    // Next restricted growth string.
    int i = k - 1;
    for (; i > 0; --i) {
      const int prefix_max = *std::max_element(block.begin(), block.begin() + i);
      if (block[i] <= prefix_max) {
        ++block[i];
        break;
      }
    }
    if (i <= 0) break;
    std::fill(block.begin() + i + 1, block.end(), 0);
  }
  return out;
}

// Direct definition: singletons, or v(S) above every proper partition sum.
std::vector<Coalition> ClassicalOracle(const Game& g) {
  std::vector<Coalition> out;
  for (Coalition s : g.family().nontrivial()) {
    bool essential = true;
    for (const auto& parts : AllSetPartitions(s)) {
      if (parts.size() < 2) continue;
      Rational sum = 0;
      for (Coalition t : parts) sum += g.Value(t);
      if (sum >= g.Value(s)) essential = false;
    }
    if (essential) out.push_back(s);
  }
  return out;
}

std::vector<Coalition> AllNontrivial(int n) {
  return FeasibleFamily::Full(n).nontrivial();
}

TEST_CASE("partitions of small coalitions") {
  const FeasibleFamily full = FeasibleFamily::Full(4);
  const PartitionFamily pair = EnumeratePartitions(full, C({1, 2}));
  REQUIRE(pair.partitions.size() == 1);
  CHECK(pair.partitions[0] == Partition{C({1}), C({2})});

  const PartitionFamily triple = EnumeratePartitions(full, C({1, 2, 3}));
  CHECK(triple.partitions.size() == 4);
  for (const auto& p : triple.partitions) {
    CHECK(p.size() >= 2);
    CHECK(std::is_sorted(p.begin(), p.end(), [](Coalition a, Coalition b) {
      return a.Lowest() < b.Lowest();
    }));
  }

  const FeasibleFamily no_singles =
      FeasibleFamily::Restricted(3, {C({1, 2}), C({3})});
  CHECK(EnumeratePartitions(no_singles, C({1, 2})).partitions.empty());
}

TEST_CASE("partition counts match Bell numbers") {
  const int bell[] = {1, 1, 2, 5, 15, 52, 203, 877};
  const FeasibleFamily full = FeasibleFamily::Full(8);
  for (int k = 1; k <= 7; ++k) {
    const Coalition s(((std::uint64_t{1} << k) - 1) << 1);
    const auto pf = EnumeratePartitions(full, s);
    CHECK(static_cast<int>(pf.partitions.size()) == bell[k] - 1);
    std::vector<Partition> sorted = pf.partitions;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
}

TEST_CASE("restricted partitions use only feasible parts") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto coalitions = testing::RandomBalancedFamily(rng, 5);
    const FeasibleFamily fam = FeasibleFamily::Restricted(5, coalitions);
    for (Coalition s : fam.nontrivial()) {
      std::vector<Partition> expected;
      for (auto parts : AllSetPartitions(s)) {
        if (parts.size() < 2) continue;
        if (!std::all_of(parts.begin(), parts.end(),
                         [&](Coalition t) { return fam.Contains(t); })) {
          continue;
        }
        std::sort(parts.begin(), parts.end(),
                  [](Coalition a, Coalition b) { return a.Lowest() < b.Lowest(); });
        expected.push_back(parts);
      }
      auto got = EnumeratePartitions(fam, s).partitions;
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("partition size cap") {
  const FeasibleFamily full = FeasibleFamily::Full(16);
  CHECK_THROWS_AS(EnumeratePartitions(full, Coalition((1u << 15) - 1)),
                  PartitionLimitExceeded);
}

TEST_CASE("classical essential coalitions of the example") {
  const Game g = testing::ExampleGame();
  CHECK(ClassicalEssential(g) == Sorted(testing::ExampleClassicalEssential()));
  CHECK(ClassicalEssential(testing::AdditiveGame({1, 2, 3, 4})) ==
        Sorted({C({1}), C({2}), C({3}), C({4})}));
  CHECK_THROWS_AS(ClassicalEssential(g.Restrict({C({1})})),
                  RestrictedFamilyUnsupported);
}

TEST_CASE("classical essential matches the direct definition") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Game g = testing::RandomGame(rng, 2 + trial % 4, -5, 10);
    CHECK(ClassicalEssential(g) == ClassicalOracle(g));
  }
}

TEST_CASE("u-essential coalitions of the example") {
  const Game g = testing::ExampleGame();
  const EssentialReport r = UEssential(g, kPercapita);
  std::vector<Coalition> expected = AllNontrivial(4);
  expected.erase(std::find(expected.begin(), expected.end(), C({1, 2, 4})));
  CHECK(r.u_essential == expected);
  CHECK(r.u_essential.size() == 13);
  REQUIRE(r.classical.has_value());
  CHECK(*r.classical == Sorted(testing::ExampleClassicalEssential()));

  for (const auto& [s, ev] : r.evidence) {
    const bool in = std::find(r.u_essential.begin(), r.u_essential.end(), s) !=
                    r.u_essential.end();
    if (s.size() == 1) {
      CHECK(ev.kind == EssentialEvidence::Kind::kNoFeasiblePartition);
    } else if (in) {
      CHECK(ev.kind == EssentialEvidence::Kind::kSlack);
      REQUIRE(ev.slack.has_value());
      CHECK(*ev.slack > 0);
      CHECK(CoreMembership(g, kPercapita, *ev.witness));
    }
    if (s == C({1, 2, 4})) {
      CHECK(ev.kind == EssentialEvidence::Kind::kDominated);
      CHECK(*ev.slack <= 0);
      // u-excess -3 against 0 for {1,2} and {4} on the whole core.
      CHECK(UExcess(kPercapita, g, s, *ev.witness) == -3);
      CHECK(ev.dominating == Partition{C({1, 2}), C({4})});
    }
  }
}

TEST_CASE("singletons are u-essential; general utilities are refused") {
  const Game g = testing::PairsWorthOne();
  const EssentialReport r = UEssential(g, kIdentity);
  CHECK(r.u_core_empty);
  CHECK(r.u_essential == Sorted({C({1}), C({2}), C({3})}));
  CHECK_THROWS_AS(UEssential(g, GeneralUtility::Named("arctan", "identity")),
                  GeneralUtilityUnsupported);
}

TEST_CASE("identity u-essential equals classical on balanced games") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Game g = testing::RandomBalancedGame(rng, 2 + trial % 3);
    const EssentialReport r = UEssential(g, kIdentity);
    CHECK(r.u_essential == ClassicalEssential(g));
  }
}

TEST_CASE("non-essential coalitions are dominated at every core vertex") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 2;
    const Game g = testing::RandomBalancedGame(rng, n);
    const UtilityFamily& u = trial % 2 ? kPercapita : kIdentity;
    const EssentialReport r = UEssential(g, u);
    const auto core = LevelSetPolytope::Build(g, u, g.family().nontrivial(), 0);
    std::vector<testing::Halfspace> hs;
    for (const auto& row : core.rows()) hs.push_back({row.coeffs, row.relation, row.rhs});
    const auto vertices = testing::EnumerateVertices(hs, n);
    REQUIRE_FALSE(vertices.empty());
    for (const auto& [s, ev] : r.evidence) {
      if (std::find(r.u_essential.begin(), r.u_essential.end(), s) !=
          r.u_essential.end()) {
        continue;
      }
      for (const auto& x : vertices) {
        const auto p = DominatingPartition(g, u.affine(), s, x, r.u_essential);
        REQUIRE(p.has_value());
        Rational sum = 0;
        for (Coalition t : *p) sum += UExcess(u, g, t, x);
        CHECK(UExcess(u, g, s, x) <= sum);
      }
    }
  }
}

TEST_CASE("restricting to u-essential coalitions reproduces the example") {
  const Game g = testing::ExampleGame();
  const PrenucleolusResult r = RestrictAndSolve(g, kPercapita);
  CHECK(r.representative == Payoff{3, 3, 3, 3});
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0].t == 0);
  CHECK(r.trace[1].t == -1);
}

TEST_CASE("additive game restricted to singletons") {
  const Game g = testing::AdditiveGame({2, 5, 1});
  const PrenucleolusResult r =
      RestrictAndSolve(g, kIdentity, {C({1}), C({2}), C({3})});
  CHECK(r.representative == Payoff{2, 5, 1});
}

TEST_CASE("restrict and solve rejects u-unbalanced games") {
  CHECK_THROWS_AS(RestrictAndSolve(testing::PairsWorthOne(), kIdentity),
                  NotUBalanced);
}

TEST_CASE("restricted solve agrees with the full solve") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = testing::RandomBalancedGame(rng, 2 + trial % 3);
    const UtilityFamily& u = trial % 2 ? kPercapita : kIdentity;
    const PrenucleolusResult full = SolvePrenucleolus(g, u);
    const PrenucleolusResult restricted = RestrictAndSolve(g, u);
    CHECK(full.representative == restricted.representative);
  }
}

TEST_CASE("classical essential coalitions suffice for the identity utility") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = testing::RandomBalancedGame(rng, 3 + trial % 2);
    const PrenucleolusResult full = SolvePrenucleolus(g, kIdentity);
    const PrenucleolusResult small =
        SolvePrenucleolus(g.Restrict(ClassicalEssential(g)), kIdentity);
    CHECK(full.representative == small.representative);
  }
}

}  // namespace
}  // namespace ucoop
