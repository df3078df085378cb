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

// ucoop <command> [flags] <game.json | ->
//
// Writes one JSON result document to stdout and a one-line summary to
// stderr. Exit codes: 0 ok, 1 input error, 2 negative verdict, 3 structural
// precondition failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ucoop/document.h"
#include "ucoop/errors.h"

namespace {

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw ucoop::ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solution concepts for TU-games with utility functions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input = "-";
  std::optional<std::string> utility;
  std::optional<std::string> point;
  std::optional<double> tolerance;
  ucoop::CommandOptions opts;

  app.add_option("--utility", utility,
                 "Utility override: a kind name or a JSON utility object");
  app.add_option("--tolerance", tolerance,
                 "Bisection tolerance for general utilities")
      ->check(CLI::PositiveNumber);

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("game", input, "Game document, or - for stdin");
    return sub;
  };
  CLI::App* core = add("core", "u-core membership or emptiness");
  core->add_option("--point", point, "Payoff, e.g. 3,3,3,3");
  add("balanced", "u-balancedness with its weight certificate");
  CLI::App* pre = add("prenucleolus", "u-prenucleolus by the lexicographic center");
  pre->add_flag("--trace", opts.trace, "Include the iteration trace");
  pre->add_flag("--restrict-to-essential", opts.restrict_to_essential,
                "Also solve over the u-essential coalitions and compare");
  pre->add_flag("--verify-kohlberg", opts.verify_kohlberg,
                "Append the Kohlberg report for the result");
  CLI::App* ess = add("essential", "Essential or u-essential coalitions");
  auto* classical = ess->add_flag("--classical", opts.classical,
                                  "Classical essential coalitions");
  bool u_flag = false;
  ess->add_flag("--u", u_flag, "u-essential coalitions (default)")
      ->excludes(classical);
  CLI::App* kohl = add("kohlberg", "Kohlberg check of a payoff");
  kohl->add_option("--point", point, "Payoff, e.g. 3,3,3,3");
  CLI::App* asg = add("assignment", "Assignment game from a profit matrix");
  asg->add_flag("--verify-structure", opts.verify_structure,
                "Check which coalitions are u-essential");
  add("rank", "Rank of the feasible family");

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  ucoop::CommandResult result;
  try {
    opts.tolerance = tolerance;
    if (point) opts.point = ucoop::ParsePoint(*point);
    result = ucoop::RunCommand(command, ReadInput(input), utility, opts);
  } catch (const ucoop::Error& e) {
    result.output = {{"schema", ucoop::kSchemaVersion},
                     {"command", command},
                     {"error", "ParseError"},
                     {"message", e.what()}};
    result.exit_code = ucoop::kExitInputError;
    result.summary = e.what();
  }
  std::cout << result.output.dump(2) << "\n";
  std::cerr << result.summary << "\n";
  return result.exit_code;
}
