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

#include "ucoop/document.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ucoop/core.h"
#include "ucoop/errors.h"
#include "ucoop/essential.h"
#include "ucoop/kohlberg.h"
#include "ucoop/lexcenter.h"

namespace ucoop {
namespace {

Json RequireField(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

int PlayerRef(const Json& ref, int n, const std::vector<std::string>& names) {
  if (ref.is_number_integer()) {
    const long long p = ref.get<long long>();
    if (p < 1 || p > n) {
      throw ParseError("player index " + std::to_string(p) + " out of range");
    }
    return static_cast<int>(p - 1);
  }
  if (ref.is_string()) {
    const std::string name = ref.get<std::string>();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("unknown player \"" + name + "\"");
    return static_cast<int>(it - names.begin());
  }
  throw ParseError("player reference must be an index or a name");
}

Coalition CoalitionFrom(const Json& members, int n,
                        const std::vector<std::string>& names) {
  if (!members.is_array() || members.empty()) {
    throw ParseError("\"members\" must be a nonempty array");
  }
  std::uint64_t mask = 0;
  for (const Json& ref : members) {
    const int p = PlayerRef(ref, n, names);
    const std::uint64_t bit = std::uint64_t{1} << p;
    if (mask & bit) throw ParseError("player listed twice in a coalition");
    mask |= bit;
  }
  return Coalition(mask);
}

Json WeightsJson(const CoalitionWeights& weights) {
  Json out = Json::array();
  for (const auto& [s, w] : weights) {
    out.push_back({{"members", CoalitionJson(s)}, {"weight", RationalJson(w)}});
  }
  return out;
}

Json CoalitionListJson(const std::vector<Coalition>& list) {
  Json out = Json::array();
  for (Coalition s : list) out.push_back(CoalitionJson(s));
  return out;
}

Json PlayersJson(const std::vector<int>& players) {
  Json out = Json::array();
  for (int p : players) out.push_back(p + 1);
  return out;
}

Json TraceJson(const std::vector<IterationRecord>& trace) {
  Json out = Json::array();
  for (const auto& rec : trace) {
    Json fixed = Json::array();
    for (const auto& f : rec.newly_fixed) {
      fixed.push_back({{"members", CoalitionJson(f.coalition)},
                       {"level", RationalJson(f.level)}});
    }
    out.push_back({{"k", rec.k}, {"t", RationalJson(rec.t)}, {"fixed", fixed}});
  }
  return out;
}

// Rows x(S) = c of a solution description, with S read off the 0/1 row.
Json DescriptionJson(const std::vector<LpRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
      if (row.coeffs[i] != 0) mask |= std::uint64_t{1} << i;
    }
    out.push_back({{"members", CoalitionJson(Coalition(mask))},
                   {"value", RationalJson(row.rhs)}});
  }
  return out;
}

Json KohlbergJson(const KohlbergReport& r) {
  Json levels = Json::array();
  for (const auto& level : r.levels) {
    Json entry = {{"alpha", RationalJson(level.alpha)},
                  {"coalitions", CoalitionListJson(level.coalitions)},
                  {"balanced", level.check.balanced}};
    if (level.check.balanced) {
      entry["weights"] = WeightsJson(level.check.certificate.weights);
    } else {
      entry["uncovered_players"] = PlayersJson(level.check.uncovered_players);
      entry["forced_zero"] = CoalitionListJson(level.check.forced_zero);
    }
    levels.push_back(std::move(entry));
  }
  Json out = {{"verdict", r.verdict},
              {"preimputation", r.is_preimputation},
              {"approximate", r.approximate},
              {"levels", levels}};
  out["first_failing_level"] =
      r.first_failing_level ? Json(*r.first_failing_level + 1) : Json(nullptr);
  return out;
}

Json Header(const std::string& command, const GameDocument& doc) {
  Json out = {{"schema", kSchemaVersion}, {"command", command}};
  if (doc.game) out["players"] = doc.game->num_players();
  if (!doc.player_names.empty()) out["player_names"] = doc.player_names;
  out["utility"] = doc.utility.Name();
  return out;
}

const Game& RequireGame(const GameDocument& doc) {
  if (!doc.game) throw ParseError("document defines no game");
  return *doc.game;
}

Payoff RequirePoint(const GameDocument& doc, const CommandOptions& opts) {
  std::optional<Payoff> x = opts.point ? opts.point : doc.point;
  if (!x) throw ParseError("a payoff point is required");
  if (static_cast<int>(x->size()) != RequireGame(doc).num_players()) {
    throw InvalidGame("point has " + std::to_string(x->size()) +
                      " entries for " +
                      std::to_string(RequireGame(doc).num_players()) +
                      " players");
  }
  return *x;
}

LexCenterOptions LexOptions(const CommandOptions& opts) {
  LexCenterOptions lex;
  if (opts.tolerance) lex.bisection_tolerance = *opts.tolerance;
  return lex;
}

std::string PayoffText(const Payoff& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += ToString(x[i]);
  }
  return s + ")";
}

// Mutual containment of the representatives and equal rank of the two
// equality systems.
bool SameSolutionSet(const PrenucleolusResult& a, const PrenucleolusResult& b) {
  for (const auto& row : a.solution_description) {
    if (!SatisfiesRow(row, b.representative)) return false;
  }
  for (const auto& row : b.solution_description) {
    if (!SatisfiesRow(row, a.representative)) return false;
  }
  auto rank = [](const PrenucleolusResult& r) {
    std::vector<RationalVector> rows;
    for (const auto& row : r.solution_description) rows.push_back(row.coeffs);
    return RowRank(std::move(rows));
  };
  return rank(a) == rank(b);
}

}  // namespace

Json RationalJson(const Rational& r) { return ToString(r); }

Json CoalitionJson(Coalition s) {
  Json out = Json::array();
  for (int p : s.Members()) out.push_back(p + 1);
  return out;
}

Json PayoffJson(const Payoff& x) {
  Json out = Json::array();
  for (const auto& r : x) out.push_back(RationalJson(r));
  return out;
}

Rational RationalFromJson(const Json& j) {
  if (j.is_string()) return ParseRational(j.get<std::string>());
  if (j.is_number_integer()) return ParseRational(j.dump());
  throw ParseError("rationals must be strings \"p/q\" or integers");
}

UtilityFamily ParseUtility(const Json& spec, int num_players,
                           const std::vector<std::string>& names) {
  if (spec.is_string()) {
    return ParseUtility(Json{{"kind", spec.get<std::string>()}}, num_players,
                        names);
  }
  const std::string kind = RequireField(spec, "kind").get<std::string>();
  if (kind == "identity") return AffineUtility::Identity();
  if (kind == "percapita") return AffineUtility::Percapita();
  if (kind == "reciprocal-percapita") return AffineUtility::ReciprocalPercapita();
  if (kind == "shift") {
    return AffineUtility::Shift(RationalFromJson(RequireField(spec, "c")));
  }
  if (kind == "q-weighted") {
    std::map<Coalition, Rational> weights;
    if (spec.contains("weights")) {
      for (const Json& w : spec.at("weights")) {
        weights[CoalitionFrom(RequireField(w, "members"), num_players, names)] =
            RationalFromJson(RequireField(w, "q"));
      }
    }
    std::optional<Rational> fallback;
    if (spec.contains("default")) fallback = RationalFromJson(spec.at("default"));
    return AffineUtility::QWeighted(std::move(weights), std::move(fallback));
  }
  if (kind == "general") {
    const std::string function =
        RequireField(spec, "function").get<std::string>();
    const std::string inner =
        spec.contains("inner") ? spec.at("inner").get<std::string>() : "identity";
    return GeneralUtility::Named(function, inner);
  }
  throw InvalidUtility("unknown utility kind \"" + kind + "\"");
}

UtilityFamily ParseUtilityText(const std::string& text, int num_players,
                               const std::vector<std::string>& names) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    return ParseUtility(Json::parse(text), num_players, names);
  }
  return ParseUtility(Json(text), num_players, names);
}

Payoff ParsePoint(const std::string& text) {
  Payoff x;
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '[') {
    for (const Json& v : Json::parse(text)) x.push_back(RationalFromJson(v));
    return x;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    x.push_back(ParseRational(item));
  }
  if (x.empty()) throw ParseError("empty point");
  return x;
}

GameDocument ParseGameDocument(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  GameDocument out;
  if (doc.contains("schema")) {
    out.schema = doc.at("schema").get<int>();
    if (out.schema != kSchemaVersion) {
      throw ParseError("unsupported schema " + std::to_string(out.schema));
    }
  }

  if (doc.contains("assignment")) {
    const Json& a = doc.at("assignment");
    std::vector<std::vector<Rational>> profits;
    for (const Json& row : RequireField(a, "profits")) {
      std::vector<Rational> r;
      for (const Json& v : row) r.push_back(RationalFromJson(v));
      profits.push_back(std::move(r));
    }
    out.assignment.emplace(std::move(profits));
    if (a.contains("buyers") || a.contains("sellers")) {
      auto buyers = RequireField(a, "buyers").get<std::vector<std::string>>();
      auto sellers = RequireField(a, "sellers").get<std::vector<std::string>>();
      if (static_cast<int>(buyers.size()) != out.assignment->buyers() ||
          static_cast<int>(sellers.size()) != out.assignment->sellers()) {
        throw ParseError("buyer or seller names do not match the matrix");
      }
      out.player_names = buyers;
      out.player_names.insert(out.player_names.end(), sellers.begin(),
                              sellers.end());
    }
    out.game = BuildGame(*out.assignment);
  } else {
    const Json players = RequireField(doc, "players");
    int n = 0;
    if (players.is_number_integer()) {
      n = players.get<int>();
    } else if (players.is_array()) {
      out.player_names = players.get<std::vector<std::string>>();
      n = static_cast<int>(out.player_names.size());
      std::vector<std::string> sorted = out.player_names;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParseError("duplicate player name");
      }
    } else {
      throw ParseError("\"players\" must be a count or a list of names");
    }
    if (n < 1 || n > kMaxPlayers) {
      throw InvalidGame("player count must be in [1, " +
                        std::to_string(kMaxPlayers) + "]");
    }
    const std::string mode =
        doc.contains("mode") ? doc.at("mode").get<std::string>() : "full";
    std::unordered_map<Coalition, Rational, CoalitionHash> values;
    std::vector<Coalition> listed;
    for (const Json& c : RequireField(doc, "coalitions")) {
      const Coalition s =
          CoalitionFrom(RequireField(c, "members"), n, out.player_names);
      if (!values.emplace(s, RationalFromJson(RequireField(c, "value"))).second) {
        throw ParseError("coalition " + s.ToString() + " listed twice");
      }
      listed.push_back(s);
    }
    if (mode == "full") {
      out.game = Game::FullFromSparse(n, values);
    } else if (mode == "restricted") {
      out.game = Game(FeasibleFamily::Restricted(n, listed), values);
    } else {
      throw ParseError("mode must be \"full\" or \"restricted\"");
    }
  }

  const int n = out.game->num_players();
  if (doc.contains("utility")) {
    out.utility = ParseUtility(doc.at("utility"), n, out.player_names);
  }
  if (doc.contains("point")) {
    Payoff x;
    for (const Json& v : doc.at("point")) x.push_back(RationalFromJson(v));
    out.point = std::move(x);
  }
  return out;
}

CommandResult CmdCore(const GameDocument& doc, const CommandOptions& opts) {
  const Game& game = RequireGame(doc);
  CommandResult r;
  r.output = Header("core", doc);
  if (opts.point || doc.point) {
    const Payoff x = RequirePoint(doc, opts);
    const bool member = CoreMembership(game, doc.utility, x);
    r.output["point"] = PayoffJson(x);
    r.output["member"] = member;
    r.exit_code = member ? kExitOk : kExitNegative;
    r.summary = PayoffText(x) + (member ? " is" : " is not") + " in the u-core";
    return r;
  }
  const CoreStatus st = CoreEmptiness(game, doc.utility);
  r.output["verdict"] = ToString(st.verdict);
  r.output["nonempty"] = st.core_nonempty;
  if (st.verdict == CoreVerdict::kDecidedByLp) {
    r.output["lp_optimum"] = RationalJson(st.lp_optimum);
    r.output["dual_weights"] = WeightsJson(st.dual_weights);
  }
  if (st.witness) r.output["witness"] = PayoffJson(*st.witness);
  r.output["approximate"] = st.approximate;
  r.exit_code = st.core_nonempty ? kExitOk : kExitNegative;
  r.summary = std::string("u-core is ") + (st.core_nonempty ? "nonempty" : "empty");
  return r;
}

CommandResult CmdBalanced(const GameDocument& doc, const CommandOptions&) {
  const BalancednessResult b = UBalanced(RequireGame(doc), doc.utility);
  CommandResult r;
  r.output = Header("balanced", doc);
  r.output["balanced"] = b.balanced;
  if (b.weighted_value) r.output["weighted_value"] = RationalJson(*b.weighted_value);
  r.output["weights"] = WeightsJson(b.weights);
  r.output["approximate"] = b.approximate;
  r.exit_code = b.balanced ? kExitOk : kExitNegative;
  r.summary = std::string("game is ") + (b.balanced ? "" : "not ") + "u-balanced";
  return r;
}

CommandResult CmdPrenucleolus(const GameDocument& doc,
                              const CommandOptions& opts) {
  const Game& game = RequireGame(doc);
  CommandResult r;
  r.output = Header("prenucleolus", doc);
  const BalanceCheck nonempty = CheckNonempty(game);
  if (!nonempty.balanced) {
    r.output["error"] = "NotBalanced";
    r.output["message"] = "A* is not balanced; the u-prenucleolus is empty";
    r.output["uncovered_players"] = PlayersJson(nonempty.uncovered_players);
    r.output["forced_zero"] = CoalitionListJson(nonempty.forced_zero);
    r.exit_code = kExitStructural;
    r.summary = "A* is not balanced";
    return r;
  }
  const LexCenterOptions lex = LexOptions(opts);
  const PrenucleolusResult full = SolvePrenucleolus(game, doc.utility, lex);
  r.output["prenucleolus"] = PayoffJson(full.representative);
  r.output["singleton"] = full.is_singleton;
  r.output["approximate"] = full.approximate;
  r.output["description"] = DescriptionJson(full.solution_description);
  r.output["iterations"] = full.trace.size();
  if (opts.trace) r.output["trace"] = TraceJson(full.trace);
  r.summary = "u-prenucleolus " + PayoffText(full.representative);

  if (opts.restrict_to_essential) {
    const EssentialReport er = UEssential(game, doc.utility);
    const PrenucleolusResult restricted =
        RestrictAndSolve(game, doc.utility, er.u_essential, lex);
    const bool match = SameSolutionSet(full, restricted);
    Json block = {{"essential", CoalitionListJson(er.u_essential)},
                  {"count", er.u_essential.size()},
                  {"prenucleolus", PayoffJson(restricted.representative)},
                  {"match", match}};
    if (opts.trace) block["trace"] = TraceJson(restricted.trace);
    r.output["restricted"] = std::move(block);
    if (!match) r.exit_code = kExitNegative;
    r.summary += match ? "; essential restriction matches"
                       : "; essential restriction differs";
  }
  if (opts.verify_kohlberg) {
    const KohlbergReport kr =
        KohlbergCheck(game, doc.utility, full.representative);
    r.output["kohlberg"] = KohlbergJson(kr);
    if (!kr.verdict) r.exit_code = kExitNegative;
    r.summary += kr.verdict ? "; Kohlberg check passes" : "; Kohlberg check fails";
  }
  return r;
}

CommandResult CmdEssential(const GameDocument& doc, const CommandOptions& opts) {
  const Game& game = RequireGame(doc);
  CommandResult r;
  r.output = Header("essential", doc);
  if (opts.classical) {
    const auto e = ClassicalEssential(game);
    r.output["classical"] = CoalitionListJson(e);
    r.output["count"] = e.size();
    r.summary = std::to_string(e.size()) + " essential coalitions";
    return r;
  }
  const EssentialReport er = UEssential(game, doc.utility);
  r.output["u_essential"] = CoalitionListJson(er.u_essential);
  r.output["count"] = er.u_essential.size();
  r.output["u_core_empty"] = er.u_core_empty;
  Json evidence = Json::array();
  for (const auto& [s, ev] : er.evidence) {
    Json e = {{"members", CoalitionJson(s)}, {"kind", ToString(ev.kind)}};
    if (ev.slack) e["slack"] = RationalJson(*ev.slack);
    if (ev.witness) e["witness"] = PayoffJson(*ev.witness);
    if (!ev.dominating.empty()) e["dominating"] = CoalitionListJson(ev.dominating);
    evidence.push_back(std::move(e));
  }
  r.output["evidence"] = std::move(evidence);
  r.summary = std::to_string(er.u_essential.size()) + " u-essential coalitions";
  return r;
}

CommandResult CmdKohlberg(const GameDocument& doc, const CommandOptions& opts) {
  const Payoff x = RequirePoint(doc, opts);
  const KohlbergReport kr = KohlbergCheck(RequireGame(doc), doc.utility, x);
  CommandResult r;
  r.output = Header("kohlberg", doc);
  r.output["point"] = PayoffJson(x);
  r.output["kohlberg"] = KohlbergJson(kr);
  r.exit_code = kr.verdict ? kExitOk : kExitNegative;
  r.summary = PayoffText(x) + (kr.verdict ? " passes" : " fails") +
              " the Kohlberg check";
  return r;
}

CommandResult CmdAssignment(const GameDocument& doc,
                            const CommandOptions& opts) {
  if (!doc.assignment) throw ParseError("document has no \"assignment\" block");
  const AssignmentSpec& spec = *doc.assignment;
  std::vector<int> buyers(spec.buyers()), sellers(spec.sellers());
  for (int i = 0; i < spec.buyers(); ++i) buyers[i] = i;
  for (int j = 0; j < spec.sellers(); ++j) sellers[j] = j;
  const Matching m = MaxWeightMatching(spec, buyers, sellers);
  CommandResult r;
  r.output = Header("assignment", doc);
  r.output["buyers"] = spec.buyers();
  r.output["sellers"] = spec.sellers();
  r.output["grand_value"] = RationalJson(m.value);
  Json pairs = Json::array();
  for (auto [b, s] : m.pairs) pairs.push_back({b + 1, s + 1});
  r.output["matching"] = std::move(pairs);
  r.summary = "v(N) = " + ToString(m.value);
  if (opts.verify_structure) {
    const AssignmentStructureReport sr = VerifyEssentialStructure(spec);
    Json mixed = Json::array();
    for (auto [b, s] : sr.essential_pairs) mixed.push_back({b + 1, s + 1});
    r.output["structure"] = {{"u_essential", CoalitionListJson(sr.u_essential)},
                             {"count", sr.u_essential.size()},
                             {"essential_pairs", mixed},
                             {"violations", CoalitionListJson(sr.violations)},
                             {"bound", sr.bound},
                             {"inclusion_holds", sr.inclusion_holds},
                             {"bound_holds", sr.bound_holds}};
    const bool ok = sr.inclusion_holds && sr.bound_holds;
    if (!ok) r.exit_code = kExitNegative;
    r.summary += ok ? "; structure verified" : "; structure violated";
  }
  return r;
}

CommandResult CmdRank(const GameDocument& doc, const CommandOptions&) {
  const Game& game = RequireGame(doc);
  const int n = game.num_players();
  std::vector<RationalVector> rows;
  for (Coalition s : game.family().coalitions()) {
    if (!s.empty()) rows.push_back(Indicator(s, n));
  }
  const int rank = RowRank(std::move(rows));
  CommandResult r;
  r.output = Header("rank", doc);
  r.output["rank"] = rank;
  r.output["singleton"] = rank == n;
  r.summary = "rank " + std::to_string(rank) + " of " + std::to_string(n);
  return r;
}

CommandResult RunCommand(const std::string& command,
                         const std::string& doc_text,
                         const std::optional<std::string>& utility_override,
                         const CommandOptions& opts) {
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    CommandResult r;
    r.output = {{"schema", kSchemaVersion}, {"command", command},
                {"error", kind}, {"message", msg}};
    r.exit_code = code;
    r.summary = msg;
    return r;
  };
  try {
    GameDocument doc = ParseGameDocument(Json::parse(doc_text));
    if (utility_override) {
      doc.utility = ParseUtilityText(*utility_override,
                                     doc.game->num_players(), doc.player_names);
    }
    if (command == "core") return CmdCore(doc, opts);
    if (command == "balanced") return CmdBalanced(doc, opts);
    if (command == "prenucleolus") return CmdPrenucleolus(doc, opts);
    if (command == "essential") return CmdEssential(doc, opts);
    if (command == "kohlberg") return CmdKohlberg(doc, opts);
    if (command == "assignment") return CmdAssignment(doc, opts);
    if (command == "rank") return CmdRank(doc, opts);
    return fail(kExitInputError, "UnknownCommand", "unknown command " + command);
  } catch (const Json::exception& e) {
    return fail(kExitInputError, "ParseError", e.what());
  } catch (const NotBalanced& e) {
    return fail(kExitStructural, "NotBalanced", e.what());
  } catch (const NotUBalanced& e) {
    return fail(kExitStructural, "NotUBalanced", e.what());
  } catch (const UnboundedBelow& e) {
    return fail(kExitStructural, "UnboundedBelow", e.what());
  } catch (const EmptyNontrivialFamily& e) {
    return fail(kExitStructural, "EmptyNontrivialFamily", e.what());
  } catch (const Error& e) {
    const std::string what = e.what();
    return fail(kExitInputError, what.substr(0, what.find(':')), what);
  }
}

}  // namespace ucoop
