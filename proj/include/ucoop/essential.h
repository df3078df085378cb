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

// Essential and u-essential coalitions, and the prenucleolus computed from
// the u-essential coalitions alone.
//
// S is u-essential when it has no partition into feasible nontrivial parts,
// or when some u-core point x makes u_S(e(S, x)) strictly larger than the
// sum of u_T(e(T, x)) over the parts T of every such partition. For a
// u-balanced game the u-essential coalitions determine the u-prenucleolus.

#ifndef UCOOP_ESSENTIAL_H_
#define UCOOP_ESSENTIAL_H_

#include <optional>
#include <utility>
#include <vector>

#include "ucoop/game.h"
#include "ucoop/lexcenter.h"
#include "ucoop/rational.h"
#include "ucoop/utility.h"

namespace ucoop {

// Largest coalition whose partitions are enumerated.
inline constexpr int kMaxPartitionBase = 14;

// Parts ordered by smallest member.
using Partition = std::vector<Coalition>;

struct PartitionFamily {
  Coalition base;
  std::vector<Partition> partitions;
};

// Every partition of `s` into at least two parts, each part a nontrivial
// member of `family`, in lexicographic order of the part lists. Throws
// PartitionLimitExceeded when |s| > kMaxPartitionBase.
PartitionFamily EnumeratePartitions(const FeasibleFamily& family, Coalition s);

// Singletons plus every S with v(S) above the best sum over its partitions.
// Canonical order. Throws RestrictedFamilyUnsupported for restricted games.
std::vector<Coalition> ClassicalEssential(const Game& game);

struct EssentialEvidence {
  enum class Kind {
    kNoFeasiblePartition,
    // slack > 0 at witness.
    kSlack,
    // slack <= 0; `dominating` beats S at the witness.
    kDominated,
    kEmptyUCore,
  };
  Kind kind = Kind::kNoFeasiblePartition;
  std::optional<Payoff> witness;
  // Optimal value of max delta, capped at 1.
  std::optional<Rational> slack;
  // Parts are u-essential whenever the refinement succeeds.
  Partition dominating;
};

const char* ToString(EssentialEvidence::Kind kind);

struct EssentialReport {
  // Only for full cooperation.
  std::optional<std::vector<Coalition>> classical;
  std::vector<Coalition> u_essential;
  bool u_core_empty = false;
  // One entry per member of A*, canonical order.
  std::vector<std::pair<Coalition, EssentialEvidence>> evidence;
};

// Throws GeneralUtilityUnsupported for non-affine utilities.
EssentialReport UEssential(const Game& game, const UtilityFamily& u);

// A partition of `s` whose parts all lie in `essential` and whose u-excess
// sum at x is at least u_S(e(S, x)); the one with the largest sum if several.
std::optional<Partition> DominatingPartition(
    const Game& game, const AffineUtility& u, Coalition s, const Payoff& x,
    const std::vector<Coalition>& essential);

// The lexicographic center with level constraints drawn from the
// u-essential coalitions only. Throws NotUBalanced.
PrenucleolusResult RestrictAndSolve(const Game& game, const UtilityFamily& u,
                                    const LexCenterOptions& options = {});
// Same with a precomputed u-essential set.
PrenucleolusResult RestrictAndSolve(const Game& game, const UtilityFamily& u,
                                    const std::vector<Coalition>& essential,
                                    const LexCenterOptions& options = {});

}  // namespace ucoop

#endif  // UCOOP_ESSENTIAL_H_
