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

/**
 * @file cli.hpp
 * @brief The four command-line subcommands as plain functions.
 *
 * Each command returns its document and exit code instead of printing, so
 * the tool's main() stays a thin argument parser and the tests can drive the
 * commands directly.
 *
 * Exit codes: 0 success, 1 verification failed, 2 parse error, 3 invalid
 * circuit. Numbers in result documents are rounded to 12 significant digits
 * at serialization time only.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "notouch/analysis.hpp"
#include "notouch/circuit.hpp"
#include "notouch/circuit_io.hpp"
#include "notouch/engine.hpp"
#include "notouch/no_touching.hpp"
#include "notouch/synthesis.hpp"

namespace notouch::cli {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr int kSignificantDigits = 12;

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitParseError = 2,
    kExitInvalidCircuit = 3,
};

enum class Format { kJson, kCsv };

struct CommandResult {
    int exitCode = kExitOk;
    std::string output;
    /// Warnings and error messages, meant for stderr.
    std::string diagnostics;
};

/// NOTOUCH_TOLERANCE overrides the 1e-9 reporting tolerance. Internal
/// pruning stays at 1e-12 regardless.
inline double reportingTolerance() {
    const char *env = std::getenv("NOTOUCH_TOLERANCE");
    if (env == nullptr || *env == '\0') {
        return kTolerance;
    }
    char *end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::kParseError, std::string("NOTOUCH_TOLERANCE must be a positive number, got '") + env +
                                                "'");
    }
    return value;
}

inline double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", kSignificantDigits, x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;  // no "-0.0" in documents
}

inline std::string formatNumber(double x) {
    return nlohmann::json(round12(x)).dump();
}

inline nlohmann::json complexJson(Complex z) {
    return nlohmann::json::array({round12(z.real()), round12(z.imag())});
}

inline Format parseFormat(const std::string &text) {
    if (text == "json") {
        return Format::kJson;
    }
    if (text == "csv") {
        return Format::kCsv;
    }
    throw Error(ErrorCode::kParseError, "format must be json or csv, got '" + text + "'");
}

/// bell | ghz | w | file:<path>
inline Circuit resolveProtocol(const std::string &protocol) {
    if (protocol == "bell") {
        return bellCircuit();
    }
    if (protocol == "ghz") {
        return ghzCircuit();
    }
    if (protocol == "w") {
        return wCircuit();
    }
    if (protocol.starts_with("file:")) {
        return loadCircuit(protocol.substr(5));
    }
    throw Error(ErrorCode::kParseError, "unknown protocol '" + protocol + "' (expected bell, ghz, w or file:<path>)");
}

/// Comma-separated radians ("0,0.5,1") or "range:START:STOP:COUNT" for COUNT
/// evenly spaced points in [START, STOP). "pi" and "2pi" are accepted as
/// START/STOP tokens.
inline std::vector<double> parseGrid(const std::string &text) {
    auto number = [](const std::string &token) {
        if (token == "pi") {
            return std::numbers::pi;
        }
        if (token == "2pi") {
            return 2.0 * std::numbers::pi;
        }
        char *end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(v)) {
            throw Error(ErrorCode::kParseError, "bad angle '" + token + "'");
        }
        return v;
    };
    auto split = [](const std::string &s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, sep)) {
            parts.push_back(part);
        }
        return parts;
    };

    std::vector<double> grid;
    if (text.starts_with("range:")) {
        const auto parts = split(text.substr(6), ':');
        if (parts.size() != 3) {
            throw Error(ErrorCode::kParseError, "range grid must be range:START:STOP:COUNT");
        }
        const double start = number(parts[0]);
        const double stop = number(parts[1]);
        const int count = static_cast<int>(number(parts[2]));
        if (count < 1) {
            throw Error(ErrorCode::kParseError, "range grid needs at least one point");
        }
        for (int i = 0; i < count; ++i) {
            grid.push_back(start + (stop - start) * i / count);
        }
    } else {
        for (const auto &token : split(text, ',')) {
            grid.push_back(number(token));
        }
    }
    if (grid.empty()) {
        throw Error(ErrorCode::kParseError, "angle grid is empty");
    }
    return grid;
}

/// Four comma-separated amplitudes for |00>,|01>,|10>,|11>; each is "re" or
/// "re:im".
inline std::vector<Complex> parseTarget(const std::string &text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto colon = token.find(':');
        auto parse = [&](const std::string &s) {
            char *end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
                throw Error(ErrorCode::kParseError, "bad amplitude '" + token + "'");
            }
            return v;
        };
        if (colon == std::string::npos) {
            out.emplace_back(parse(token), 0.0);
        } else {
            out.emplace_back(parse(token.substr(0, colon)), parse(token.substr(colon + 1)));
        }
    }
    if (out.size() != 4) {
        throw Error(ErrorCode::kParseError, "two-qubit target needs exactly 4 amplitudes, got " +
                                                std::to_string(out.size()));
    }
    return out;
}

inline nlohmann::json metadata() {
    return {
        {"tool", "notouch"},
        {"version", kToolVersion},
        {"reporting_tolerance", reportingTolerance()},
        {"pruning_tolerance", kPruneTolerance},
        {"significant_digits", kSignificantDigits},
    };
}

inline std::string basisLabel(std::size_t index, std::size_t numQubits) {
    std::string label(numQubits, '0');
    for (std::size_t q = 0; q < numQubits; ++q) {
        if (index & (std::size_t{1} << (numQubits - 1 - q))) {
            label[q] = '1';
        }
    }
    return label;
}

namespace detail {

/// Runs `body` and maps library errors onto exit codes.
template <typename Body>
CommandResult guarded(Body &&body) {
    try {
        return body();
    } catch (const Error &e) {
        CommandResult r;
        r.exitCode = e.code() == ErrorCode::kInvalidCircuit ? kExitInvalidCircuit : kExitParseError;
        r.diagnostics = e.what();
        return r;
    }
}

inline Circuit validatedCircuit(const std::string &protocol) {
    Circuit c = resolveProtocol(protocol);
    requireValid(c);
    return c;
}

}  // namespace detail

struct RunRequest {
    std::string protocol = "bell";
    Statistics statistics = Statistics::boson();
    Format format = Format::kJson;
};

inline nlohmann::json runDocument(const std::string &protocol, const RunOutput &out,
                                  const std::optional<QubitState> &qubits) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[key, amp] : out.accepted.terms()) {
        nlohmann::json term = {{"modes", key.modes}, {"amplitude", complexJson(amp)}};
        if (key.distinguishable()) {
            term["species"] = key.species;
        }
        terms.push_back(std::move(term));
    }
    nlohmann::json amps = nullptr;
    if (qubits) {
        amps = nlohmann::json::array();
        for (std::size_t i = 0; i < qubits->dimension(); ++i) {
            amps.push_back({{"basis", basisLabel(i, qubits->numQubits())}, {"amplitude", complexJson((*qubits)[i])}});
        }
    }
    return {
        {"protocol", protocol},
        {"statistics", out.distinguishable ? std::string("distinguishable") : out.statistics.token()},
        {"probability", round12(out.probability)},
        {"accepted_terms", terms},
        {"qubit_amplitudes", amps},
        {"metadata", metadata()},
    };
}

inline std::string runCsv(const nlohmann::json &doc) {
    std::string csv = "section,key,re,im\n";
    csv += "probability,," + formatNumber(doc["probability"].get<double>()) + ",0.0\n";
    for (const auto &t : doc["accepted_terms"]) {
        std::string modes;
        for (const auto &m : t["modes"]) {
            modes += (modes.empty() ? "" : " ") + std::to_string(m.get<int>());
        }
        csv += "term," + modes + "," + t["amplitude"][0].dump() + "," + t["amplitude"][1].dump() + "\n";
    }
    if (!doc["qubit_amplitudes"].is_null()) {
        for (const auto &q : doc["qubit_amplitudes"]) {
            csv += "qubit," + q["basis"].get<std::string>() + "," + q["amplitude"][0].dump() + "," +
                   q["amplitude"][1].dump() + "\n";
        }
    }
    return csv;
}

inline CommandResult cmdRun(const RunRequest &req) {
    return detail::guarded([&] {
        const Circuit c = detail::validatedCircuit(req.protocol);
        const RunOutput out = run(c, req.statistics);
        std::optional<QubitState> qubits;
        CommandResult result;
        try {
            qubits = extractDualRail(out.accepted, c.targetPairs, req.statistics);
        } catch (const Error &e) {
            result.diagnostics = std::string("no dual-rail state: ") + e.what();
        }
        const nlohmann::json doc = runDocument(req.protocol, out, qubits);
        result.output = req.format == Format::kJson ? doc.dump(2) + "\n" : runCsv(doc);
        return result;
    });
}

struct CorrelateRequest {
    std::string protocol = "bell";
    Statistics statistics = Statistics::boson();
    bool distinguishable = false;
    std::vector<double> theta1;
    std::vector<double> theta2;
    Format format = Format::kJson;
};

inline CommandResult cmdCorrelate(const CorrelateRequest &req) {
    return detail::guarded([&] {
        if (req.theta1.empty() || req.theta2.empty()) {
            throw Error(ErrorCode::kParseError, "angle grids must be nonempty");
        }
        const Circuit c = detail::validatedCircuit(req.protocol);
        if (c.targetPairs.size() != 2) {
            throw Error(ErrorCode::kParseError, "correlate needs a two-qubit protocol");
        }
        const RunOutput out = req.distinguishable ? runDistinguishable(c) : run(c, req.statistics);

        nlohmann::json rows = nlohmann::json::array();
        std::string csv = "theta1,theta2,E\n";
        for (double t1 : req.theta1) {
            for (double t2 : req.theta2) {
                const double e = correlation(out, t1, t2);
                rows.push_back({{"theta1", round12(t1)}, {"theta2", round12(t2)}, {"E", round12(e)}});
                csv += formatNumber(t1) + "," + formatNumber(t2) + "," + formatNumber(e) + "\n";
            }
        }
        CommandResult result;
        if (req.format == Format::kCsv) {
            result.output = csv;
        } else {
            const nlohmann::json doc = {
                {"protocol", req.protocol},
                {"statistics", req.distinguishable ? std::string("distinguishable") : req.statistics.token()},
                {"rows", rows},
                {"metadata", metadata()},
            };
            result.output = doc.dump(2) + "\n";
        }
        return result;
    });
}

struct VerifyRequest {
    std::string protocol = "bell";
    Statistics statistics = Statistics::boson();
    /// Disable post-selection regardless of what the circuit says.
    bool acceptAll = false;
};

inline nlohmann::json touchReportJson(const std::string &protocol, const Statistics &statistics,
                                      const TouchReport &report) {
    nlohmann::json examples = nlohmann::json::array();
    for (const auto &ev : report.counterexamples) {
        nlohmann::json assignment = nlohmann::json::array();
        for (const auto &path : ev.history.assignment) {
            assignment.push_back(path);
        }
        examples.push_back({
            {"history", ev.historyIndex},
            {"stage", std::string(boundaryName(ev.stage))},
            {"location", ev.location},
            {"assignment", assignment},
            {"amplitude", complexJson(ev.history.amplitude)},
        });
    }
    return {
        {"protocol", protocol},
        {"statistics", statistics.token()},
        {"verdict", report.pass() ? "pass" : "fail"},
        {"histories_examined", report.historiesExamined},
        {"histories_contributing", report.historiesContributing},
        {"counterexamples", examples},
        {"metadata", metadata()},
    };
}

inline CommandResult cmdVerify(const VerifyRequest &req) {
    return detail::guarded([&] {
        Circuit c = detail::validatedCircuit(req.protocol);
        c.acceptAll = c.acceptAll || req.acceptAll;
        const TouchReport report = verifyNoTouching(c, req.statistics);
        CommandResult result;
        result.output = touchReportJson(req.protocol, req.statistics, report).dump(2) + "\n";
        result.exitCode = report.pass() ? kExitOk : kExitVerifyFailed;
        return result;
    });
}

struct SynthesizeRequest {
    std::vector<Complex> target;
    Statistics statistics = Statistics::boson();
    /// Where to write the circuit; when empty the circuit is embedded in the
    /// printed document.
    std::string outputPath;
};

/// Runs the synthesized circuit through the engine and compares with target.
inline double achievedFidelity(const Circuit &c, const Statistics &statistics, const QubitState &target) {
    const RunOutput out = run(c, statistics);
    return fidelity(extractDualRail(out.accepted, c.targetPairs, statistics), target);
}

inline CommandResult cmdSynthesize(const SynthesizeRequest &req) {
    return detail::guarded([&] {
        CommandResult result;
        QubitState raw(2, req.target);
        const double n = raw.norm();
        if (n < kPruneTolerance) {
            throw Error(ErrorCode::kZeroState, "target amplitudes are all zero");
        }
        if (std::abs(n - 1.0) > 1e-6) {
            result.diagnostics = "warning: target norm " + formatNumber(n) + " renormalized to 1\n";
        }
        const QubitState target = raw.normalized();
        const Circuit c = synthesizeTwoQubit(target, req.statistics);
        const SchmidtDecomposition schmidt = schmidtDecompose(target);
        const double f = achievedFidelity(c, req.statistics, target);
        const double tol = reportingTolerance();

        nlohmann::json doc = {
            {"statistics", req.statistics.token()},
            {"fidelity", round12(f)},
            {"meets_tolerance", f >= 1.0 - tol},
            {"schmidt_coefficients", {round12(schmidt.coefficients[0]), round12(schmidt.coefficients[1])}},
            {"schmidt_rank", schmidt.rank()},
            {"metadata", metadata()},
        };
        if (req.outputPath.empty()) {
            doc["circuit"] = circuitToJson(c);
        } else {
            saveCircuit(c, req.outputPath);
            doc["circuit_file"] = req.outputPath;
        }
        result.output = doc.dump(2) + "\n";
        return result;
    });
}

}  // namespace notouch::cli
