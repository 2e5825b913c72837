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
 * @file circuit.hpp
 * @brief Staged circuit representation and the built-in protocols.
 *
 * Every circuit follows the same five stages:
 *   1. one particle injected into each input subsystem A_k,
 *   2. local unitaries, each acting inside a single A_k,
 *   3. a permutation of all paths,
 *   4. local unitaries, each acting inside a single output subsystem B_k,
 *   5. post-selection on one particle in each target pair of B_k.
 *
 * Permutations use one-line notation: entry i is the label that input path i
 * carries after the permutation.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "notouch/error.hpp"
#include "notouch/fock.hpp"
#include "notouch/matrix.hpp"

namespace notouch {

/// Unitary acting on the listed modes. Column j is the image of
/// a^dagger_{support[j]}: a^dagger_{support[j]} -> sum_i matrix(i, j) a^dagger_{support[i]}.
struct LocalUnitary {
    std::vector<Mode> support;
    Matrix matrix;

    bool operator==(const LocalUnitary &) const = default;
};

class PermutationSpec {
   public:
    PermutationSpec() = default;

    /// Assumes `oneLine` is already a bijection on 1..N; use
    /// permutationFromOneLine() for unchecked input.
    explicit PermutationSpec(std::vector<Mode> oneLine) : oneLine_(std::move(oneLine)) {
    }

    static PermutationSpec identity(int numModes) {
        std::vector<Mode> entries(static_cast<std::size_t>(numModes));
        for (int i = 0; i < numModes; ++i) {
            entries[static_cast<std::size_t>(i)] = i + 1;
        }
        return PermutationSpec(std::move(entries));
    }

    const std::vector<Mode> &oneLine() const {
        return oneLine_;
    }
    int size() const {
        return static_cast<int>(oneLine_.size());
    }

    Mode operator()(Mode input) const {
        return oneLine_.at(static_cast<std::size_t>(input - 1));
    }

    PermutationSpec inverse() const {
        std::vector<Mode> inv(oneLine_.size());
        for (std::size_t i = 0; i < oneLine_.size(); ++i) {
            inv[static_cast<std::size_t>(oneLine_[i] - 1)] = static_cast<Mode>(i + 1);
        }
        return PermutationSpec(std::move(inv));
    }

    bool isIdentity() const {
        for (std::size_t i = 0; i < oneLine_.size(); ++i) {
            if (oneLine_[i] != static_cast<Mode>(i + 1)) {
                return false;
            }
        }
        return true;
    }

    bool isBijection() const {
        std::vector<bool> seen(oneLine_.size(), false);
        for (Mode m : oneLine_) {
            if (m < 1 || m > size() || seen[static_cast<std::size_t>(m - 1)]) {
                return false;
            }
            seen[static_cast<std::size_t>(m - 1)] = true;
        }
        return true;
    }

    bool operator==(const PermutationSpec &) const = default;

   private:
    std::vector<Mode> oneLine_;
};

inline PermutationSpec permutationFromOneLine(std::vector<Mode> entries) {
    PermutationSpec perm(std::move(entries));
    if (!perm.isBijection()) {
        throw Error(ErrorCode::kNotBijective, "one-line entries are not a permutation of 1..N");
    }
    return perm;
}

using Gate = std::variant<LocalUnitary, PermutationSpec>;

/// Balanced beam splitter (1/sqrt2)[[1, 1], [1, -1]] on paths k and l.
inline LocalUnitary hadamardGate(Mode k, Mode l) {
    if (k == l) {
        throw Error(ErrorCode::kSameMode, "Hadamard needs two distinct paths, got " + std::to_string(k) + " twice");
    }
    const double h = 1.0 / std::sqrt(2.0);
    return LocalUnitary{{k, l}, Matrix{{h, h}, {h, -h}}};
}

/// 3x3 unitary on paths {3, 4, 5} taking a^dagger_3 to
/// (sqrt2 a^dagger_3 + a^dagger_4 + sqrt2 a^dagger_5) / sqrt5. The remaining
/// columns come from Gram-Schmidt against e_2 then e_3, so the matrix is
/// reproducible to the last bit.
inline LocalUnitary wInputUnitary() {
    const double s5 = std::sqrt(5.0);
    const std::vector<std::vector<double>> seeds = {
        {std::sqrt(2.0) / s5, 1.0 / s5, std::sqrt(2.0) / s5},
        {0.0, 1.0, 0.0},
        {0.0, 0.0, 1.0},
    };
    std::vector<std::vector<double>> columns;
    for (const auto &seed : seeds) {
        std::vector<double> v = seed;
        for (const auto &q : columns) {
            double dot = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                dot += q[i] * v[i];
            }
            for (std::size_t i = 0; i < 3; ++i) {
                v[i] -= dot * q[i];
            }
        }
        double n = 0.0;
        for (double x : v) {
            n += x * x;
        }
        n = std::sqrt(n);
        for (double &x : v) {
            x /= n;
        }
        columns.push_back(std::move(v));
    }
    Matrix u(3, 3);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t r = 0; r < 3; ++r) {
            u(r, c) = columns[c][r];
        }
    }
    return LocalUnitary{{3, 4, 5}, std::move(u)};
}

struct Circuit {
    int numModes = 0;
    std::vector<std::vector<Mode>> inputSubsystems;
    /// injections[k] is the path of A_k that receives the particle.
    std::vector<Mode> injections;
    std::vector<LocalUnitary> inputStage;
    PermutationSpec permutation;
    std::vector<LocalUnitary> outputStage;
    std::vector<std::vector<Mode>> outputSubsystems;
    /// (first, second) encode (|up>, |down>) of qubit k.
    std::vector<std::pair<Mode, Mode>> targetPairs;
    /// Skip post-selection and accept every outcome. Only used for control
    /// experiments; the protocols always post-select.
    bool acceptAll = false;

    bool operator==(const Circuit &) const = default;

    std::size_t numSubsystems() const {
        return inputSubsystems.size();
    }
};

struct Violation {
    std::string kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        return violations.empty();
    }

    bool has(std::string_view kind) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation &v) { return v.kind == kind; });
    }

    std::string summary() const {
        std::string out;
        for (const auto &v : violations) {
            if (!out.empty()) {
                out += "; ";
            }
            out += v.kind + " (" + v.detail + ")";
        }
        return out;
    }
};

namespace detail {

inline std::string modeList(const std::vector<Mode> &modes) {
    std::string out = "{";
    for (std::size_t i = 0; i < modes.size(); ++i) {
        out += (i ? "," : "") + std::to_string(modes[i]);
    }
    return out + "}";
}

inline bool contains(const std::vector<Mode> &set, Mode m) {
    return std::find(set.begin(), set.end(), m) != set.end();
}

/// Index of the subsystem that holds all of `support`, if exactly one does.
inline std::optional<std::size_t> owningSubsystem(const std::vector<std::vector<Mode>> &subsystems,
                                                  const std::vector<Mode> &support) {
    for (std::size_t k = 0; k < subsystems.size(); ++k) {
        if (std::all_of(support.begin(), support.end(), [&](Mode m) { return contains(subsystems[k], m); })) {
            return k;
        }
    }
    return std::nullopt;
}

inline void checkPartition(const Circuit &c, const std::vector<std::vector<Mode>> &subsystems, std::string_view side,
                           ValidationReport &report) {
    std::set<Mode> seen;
    for (std::size_t k = 0; k < subsystems.size(); ++k) {
        if (subsystems[k].empty()) {
            report.violations.push_back({"empty subsystem", std::string(side) + " subsystem " + std::to_string(k + 1)});
        }
        for (Mode m : subsystems[k]) {
            if (m < 1 || m > c.numModes) {
                report.violations.push_back({"mode out of range", std::string(side) + " subsystem " +
                                                                      std::to_string(k + 1) + " lists path " +
                                                                      std::to_string(m)});
            } else if (!seen.insert(m).second) {
                report.violations.push_back({"subsystems not disjoint", std::string(side) + " path " +
                                                                            std::to_string(m) + " listed twice"});
            }
        }
    }
}

inline void checkStage(const Circuit &c, const std::vector<LocalUnitary> &stage,
                       const std::vector<std::vector<Mode>> &subsystems, std::string_view side,
                       std::string_view nonLocalKind, ValidationReport &report) {
    std::set<Mode> used;
    for (std::size_t g = 0; g < stage.size(); ++g) {
        const auto &gate = stage[g];
        const std::string name = std::string(side) + " gate " + std::to_string(g) + " on " + modeList(gate.support);
        if (gate.support.empty()) {
            report.violations.push_back({"empty gate support", name});
            continue;
        }
        std::set<Mode> distinct(gate.support.begin(), gate.support.end());
        if (distinct.size() != gate.support.size()) {
            report.violations.push_back({"repeated mode in gate support", name});
        }
        if (std::any_of(gate.support.begin(), gate.support.end(), [&](Mode m) { return m < 1 || m > c.numModes; })) {
            report.violations.push_back({"mode out of range", name});
        }
        if (gate.matrix.rows() != gate.support.size() || gate.matrix.cols() != gate.support.size()) {
            report.violations.push_back({"gate dimension mismatch", name});
        } else if (!gate.matrix.isUnitary(kTolerance)) {
            report.violations.push_back({"non-unitary gate", name});
        }
        if (!owningSubsystem(subsystems, gate.support)) {
            report.violations.push_back({std::string(nonLocalKind), name});
        }
        for (Mode m : distinct) {
            if (!used.insert(m).second) {
                report.violations.push_back({"overlapping gates in stage", name});
                break;
            }
        }
    }
}

}  // namespace detail

/// Checks every structural precondition of the five-stage scenario. Never
/// throws; an empty violation list means the circuit may be executed.
inline ValidationReport validateCircuit(const Circuit &c) {
    ValidationReport report;
    if (c.numModes < 1) {
        report.violations.push_back({"no modes", "num_modes must be positive"});
        return report;
    }
    const std::size_t k = c.inputSubsystems.size();
    if (k == 0) {
        report.violations.push_back({"no subsystems", "at least one input subsystem is required"});
    }
    detail::checkPartition(c, c.inputSubsystems, "input", report);
    detail::checkPartition(c, c.outputSubsystems, "output", report);
    if (c.outputSubsystems.size() != k) {
        report.violations.push_back({"subsystem count mismatch", std::to_string(k) + " input vs " +
                                                                     std::to_string(c.outputSubsystems.size()) +
                                                                     " output subsystems"});
    }

    if (c.injections.size() != k) {
        report.violations.push_back({"injection count mismatch", "need exactly one injected path per input subsystem"});
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            if (!detail::contains(c.inputSubsystems[i], c.injections[i])) {
                report.violations.push_back({"injection outside subsystem",
                                             "path " + std::to_string(c.injections[i]) + " is not in A_" +
                                                 std::to_string(i + 1)});
            }
        }
    }

    detail::checkStage(c, c.inputStage, c.inputSubsystems, "input", "non-local input gate", report);
    detail::checkStage(c, c.outputStage, c.outputSubsystems, "output", "non-local output gate", report);

    if (c.permutation.size() != c.numModes || !c.permutation.isBijection()) {
        report.violations.push_back({"invalid permutation", "permutation must be a bijection on 1.." +
                                                                std::to_string(c.numModes)});
    }

    if (c.targetPairs.size() != c.outputSubsystems.size()) {
        report.violations.push_back({"target pair count mismatch", "need one target pair per output subsystem"});
    }
    std::set<Mode> pairModes;
    bool disjoint = true;
    for (std::size_t i = 0; i < c.targetPairs.size(); ++i) {
        const auto [up, down] = c.targetPairs[i];
        const std::string name = "pair " + std::to_string(i + 1) + " (" + std::to_string(up) + "," +
                                 std::to_string(down) + ")";
        if (up == down) {
            report.violations.push_back({"degenerate target pair", name});
        }
        if (i < c.outputSubsystems.size() &&
            (!detail::contains(c.outputSubsystems[i], up) || !detail::contains(c.outputSubsystems[i], down))) {
            report.violations.push_back({"pair outside subsystem", name + " not inside B_" + std::to_string(i + 1)});
        }
        for (Mode m : {up, down}) {
            if (!pairModes.insert(m).second && up != down) {
                disjoint = false;
            }
        }
    }
    if (!disjoint) {
        report.violations.push_back({"pairs not disjoint", "target pairs share a path"});
    }
    return report;
}

inline void requireValid(const Circuit &c) {
    const ValidationReport report = validateCircuit(c);
    if (!report.ok()) {
        throw Error(ErrorCode::kInvalidCircuit, report.summary());
    }
}

/// Two particles, two Hadamards and the swap of paths 2 and 4. Post-selected
/// output: (a1 a3 + a4 a2)|0>/2.
inline Circuit bellCircuit() {
    Circuit c;
    c.numModes = 4;
    c.inputSubsystems = {{1, 2}, {3, 4}};
    c.injections = {1, 3};
    c.inputStage = {hadamardGate(1, 2), hadamardGate(3, 4)};
    c.permutation = permutationFromOneLine({1, 4, 3, 2});
    c.outputSubsystems = {{1, 2}, {3, 4}};
    c.targetPairs = {{1, 2}, {3, 4}};
    return c;
}

inline Circuit ghzCircuit() {
    Circuit c;
    c.numModes = 6;
    c.inputSubsystems = {{1, 2}, {3, 4}, {5, 6}};
    c.injections = {1, 3, 5};
    c.inputStage = {hadamardGate(1, 2), hadamardGate(3, 4), hadamardGate(5, 6)};
    c.permutation = permutationFromOneLine({1, 4, 3, 6, 5, 2});
    c.outputSubsystems = {{1, 2}, {3, 4}, {5, 6}};
    c.targetPairs = {{1, 2}, {3, 4}, {5, 6}};
    return c;
}

/// Seven paths; the middle subsystem holds three of them. Only paths 3 and 5
/// of B_2 see an output Hadamard, path 4 passes through untouched.
inline Circuit wCircuit() {
    Circuit c;
    c.numModes = 7;
    c.inputSubsystems = {{1, 2}, {3, 4, 5}, {6, 7}};
    c.injections = {1, 3, 6};
    c.inputStage = {hadamardGate(1, 2), wInputUnitary(), hadamardGate(6, 7)};
    c.permutation = permutationFromOneLine({1, 3, 2, 4, 7, 6, 5});
    c.outputStage = {hadamardGate(3, 5)};
    c.outputSubsystems = {{1, 2}, {3, 4, 5}, {6, 7}};
    c.targetPairs = {{1, 2}, {3, 4}, {6, 7}};
    return c;
}

/// Control experiment: the permutation routes both particles into one
/// Hadamard in B_1, and every outcome is accepted.
inline Circuit hongOuMandelCircuit() {
    Circuit c;
    c.numModes = 4;
    c.inputSubsystems = {{1, 2}, {3, 4}};
    c.injections = {1, 3};
    c.permutation = permutationFromOneLine({1, 3, 2, 4});
    c.outputStage = {hadamardGate(1, 2)};
    c.outputSubsystems = {{1, 2}, {3, 4}};
    c.targetPairs = {{1, 2}, {3, 4}};
    c.acceptAll = true;
    return c;
}

}  // namespace notouch
