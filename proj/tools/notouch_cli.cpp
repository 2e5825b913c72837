// Copyright 2026 The notouch Authors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "notouch/cli.hpp"

using namespace notouch;

namespace {

constexpr const char *kStatisticsHelp =
    "Particle statistics: boson, fermion or anyon:<theta> with theta the exchange phase in radians "
    "(e.g. anyon:0.7)";
constexpr const char *kProtocolHelp = "bell, ghz, w, or file:<path> for a JSON circuit file";

int emit(const cli::CommandResult &r) {
    std::cout << r.output;
    if (!r.diagnostics.empty()) {
        std::cerr << r.diagnostics;
        if (r.diagnostics.back() != '\n') {
            std::cerr << '\n';
        }
    }
    return r.exitCode;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulate no-touching entanglement protocols on linear-optical circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cli::kToolVersion);

    std::string protocol = "bell";
    std::string statistics = "boson";
    std::string format = "json";

    auto *runCmd = app.add_subcommand("run", "Run a protocol and print the post-selected state");
    runCmd->add_option("--protocol", protocol, kProtocolHelp)->capture_default_str();
    runCmd->add_option("--statistics", statistics, kStatisticsHelp)->capture_default_str();
    runCmd->add_option("--format", format, "json or csv")->capture_default_str();

    bool distinguishable = false;
    std::string theta1 = "range:0:2pi:37";
    std::string theta2 = "range:0:2pi:37";
    auto *corrCmd = app.add_subcommand("correlate", "Tabulate the two-party correlation E(theta1, theta2)");
    corrCmd->add_option("--protocol", protocol, kProtocolHelp)->capture_default_str();
    corrCmd->add_option("--statistics", statistics, kStatisticsHelp)->capture_default_str();
    corrCmd->add_flag("--distinguishable", distinguishable, "Label every particle with its own species");
    corrCmd->add_option("--theta1", theta1, "Angles for party 1: 'a,b,c' or range:START:STOP:COUNT")
        ->capture_default_str();
    corrCmd->add_option("--theta2", theta2, "Angles for party 2, same syntax")->capture_default_str();
    corrCmd->add_option("--format", format, "json or csv")->capture_default_str();

    std::string file;
    bool acceptAll = false;
    auto *verifyCmd = app.add_subcommand("verify", "Check that accepted path histories never touch");
    verifyCmd->add_option("--protocol", protocol, kProtocolHelp)->capture_default_str();
    verifyCmd->add_option("--file", file, "JSON circuit file (shorthand for --protocol file:<path>)");
    verifyCmd->add_option("--statistics", statistics, kStatisticsHelp)->capture_default_str();
    verifyCmd->add_flag("--accept-all", acceptAll, "Disable post-selection");

    std::string target;
    std::string output;
    auto *synthCmd = app.add_subcommand("synthesize", "Build a circuit that prepares a two-qubit state");
    synthCmd->add_option("--target", target, "Amplitudes of |00>,|01>,|10>,|11>, each 're' or 're:im'")
        ->required();
    synthCmd->add_option("--statistics", statistics, kStatisticsHelp)->capture_default_str();
    synthCmd->add_option("--output", output, "Write the circuit JSON here instead of embedding it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::kExitParseError;
    }

    try {
        const Statistics stats = Statistics::parse(statistics);
        if (runCmd->parsed()) {
            return emit(cli::cmdRun({protocol, stats, cli::parseFormat(format)}));
        }
        if (corrCmd->parsed()) {
            return emit(cli::cmdCorrelate({protocol, stats, distinguishable, cli::parseGrid(theta1),
                                           cli::parseGrid(theta2), cli::parseFormat(format)}));
        }
        if (verifyCmd->parsed()) {
            return emit(cli::cmdVerify({file.empty() ? protocol : "file:" + file, stats, acceptAll}));
        }
        if (synthCmd->parsed()) {
            return emit(cli::cmdSynthesize({cli::parseTarget(target), stats, output}));
        }
    } catch (const Error &e) {
        std::cerr << e.what() << '\n';
        return cli::kExitParseError;
    }
    return cli::kExitParseError;
}
