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

// JSON game documents and the command layer behind the ucoop tool.
//
// A game document:
//   {
//     "schema": 1,
//     "players": 4,                      // or ["ann", "bob", ...]
//     "mode": "full",                    // or "restricted"
//     "coalitions": [{"members": [1, 2], "value": "6"}, ...],
//     "utility": {"kind": "percapita"},
//     "point": ["3", "3", "3", "3"]      // optional
//   }
// Player references are 1-based indices or names. Full mode defaults
// unlisted coalitions to 0; restricted mode lists every feasible coalition
// and must include the grand coalition. An assignment document replaces
// "players", "mode" and "coalitions" with
//   "assignment": {"profits": [["3", "0"], ["0", "4"]]}
// optionally with "buyers" and "sellers" name lists.
//
// Utility objects: {"kind": "identity" | "percapita" |
// "reciprocal-percapita"}, {"kind": "shift", "c": "p/q"},
// {"kind": "q-weighted", "weights": [{"members": [...], "q": "p/q"}],
// "default": "p/q"}, and {"kind": "general", "function": "arctan" | "tanh" |
// "cubic" | "exp" | "negexp", "inner": "identity" | "percapita"}.
//
// Results are JSON with every rational written as an exact "p/q" string and
// coalitions as sorted lists of 1-based player indices.

#ifndef UCOOP_DOCUMENT_H_
#define UCOOP_DOCUMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucoop/assignment.h"
#include "ucoop/game.h"
#include "ucoop/rational.h"
#include "ucoop/utility.h"

namespace ucoop {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitNegative = 2,
  kExitStructural = 3,
};

struct GameDocument {
  int schema = kSchemaVersion;
  std::vector<std::string> player_names;
  std::optional<Game> game;
  std::optional<AssignmentSpec> assignment;
  UtilityFamily utility = AffineUtility::Identity();
  std::optional<Payoff> point;
};

// Throws ParseError, InvalidGame, InvalidUtility or UnknownCoalition.
GameDocument ParseGameDocument(const Json& doc);
UtilityFamily ParseUtility(const Json& spec, int num_players,
                           const std::vector<std::string>& names = {});
// Accepts a JSON object or a bare kind name such as "percapita".
UtilityFamily ParseUtilityText(const std::string& text, int num_players,
                               const std::vector<std::string>& names = {});
// Comma-separated rationals or a JSON array of them.
Payoff ParsePoint(const std::string& text);

Json RationalJson(const Rational& r);
Json CoalitionJson(Coalition s);
Json PayoffJson(const Payoff& x);
Rational RationalFromJson(const Json& j);

struct CommandOptions {
  std::optional<Payoff> point;
  bool trace = false;
  bool restrict_to_essential = false;
  bool verify_kohlberg = false;
  bool classical = false;
  bool verify_structure = false;
  std::optional<double> tolerance;
};

struct CommandResult {
  Json output;
  int exit_code = kExitOk;
  // One-line human summary.
  std::string summary;
};

CommandResult CmdCore(const GameDocument& doc, const CommandOptions& opts);
CommandResult CmdBalanced(const GameDocument& doc, const CommandOptions& opts);
CommandResult CmdPrenucleolus(const GameDocument& doc,
                              const CommandOptions& opts);
CommandResult CmdEssential(const GameDocument& doc, const CommandOptions& opts);
CommandResult CmdKohlberg(const GameDocument& doc, const CommandOptions& opts);
CommandResult CmdAssignment(const GameDocument& doc,
                            const CommandOptions& opts);
CommandResult CmdRank(const GameDocument& doc, const CommandOptions& opts);

// Parses `doc_text`, applies the utility override and dispatches `command`.
// Library errors become an {"error": ...} document with the matching exit
// code.
CommandResult RunCommand(const std::string& command,
                         const std::string& doc_text,
                         const std::optional<std::string>& utility_override,
                         const CommandOptions& opts);

}  // namespace ucoop

#endif  // UCOOP_DOCUMENT_H_
