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
 * @file no_touching.hpp
 * @brief Classical path histories and the no-touching certificate.
 *
 * A history fixes, for each particle, the path it occupies at every stage
 * boundary. Particles change path only inside gates, so a history is one
 * choice of output path per traversed gate; its amplitude is the product of
 * the traversed matrix elements times the exchange phase of sorting the
 * particles' final paths.
 *
 * Two particles touch when they share a path at a stage boundary or when
 * both enter the same gate. A circuit passes when no history that has
 * nonzero amplitude and survives post-selection contains a touch.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "notouch/circuit.hpp"
#include "notouch/engine.hpp"
#include "notouch/error.hpp"
#include "notouch/fock.hpp"

namespace notouch {

enum class Boundary : std::uint8_t { kInjection = 0, kAfterInput = 1, kAfterPermutation = 2, kAfterOutput = 3 };

inline constexpr std::size_t kNumBoundaries = 4;
inline constexpr std::size_t kMaxHistories = 1'000'000;

inline std::string_view boundaryName(Boundary b) {
    switch (b) {
        case Boundary::kInjection: return "injection";
        case Boundary::kAfterInput: return "after input stage";
        case Boundary::kAfterPermutation: return "after permutation";
        case Boundary::kAfterOutput: return "after output stage";
    }
    return "?";
}

struct PathHistory {
    /// assignment[particle][boundary]; particles in ascending injection order.
    std::vector<std::array<Mode, kNumBoundaries>> assignment;
    Complex amplitude;
    /// Two particles end in the same path; amplitude then carries no
    /// exchange phase because the single-occupancy ordering is undefined.
    bool collides = false;

    std::vector<Mode> finalModes() const {
        std::vector<Mode> out;
        out.reserve(assignment.size());
        for (const auto &path : assignment) {
            out.push_back(path[static_cast<std::size_t>(Boundary::kAfterOutput)]);
        }
        return out;
    }
};

namespace detail {

struct SingleParticlePath {
    std::array<Mode, kNumBoundaries> modes{};
    Complex amplitude = 1.0;
};

inline const LocalUnitary *gateContaining(const std::vector<LocalUnitary> &stage, Mode m) {
    for (const auto &g : stage) {
        if (contains(g.support, m)) {
            return &g;
        }
    }
    return nullptr;
}

/// Every route of one particle through a stage; a path outside every gate
/// passes straight through.
inline std::vector<std::pair<Mode, Complex>> branches(const std::vector<LocalUnitary> &stage, Mode m) {
    const LocalUnitary *g = gateContaining(stage, m);
    if (g == nullptr) {
        return {{m, 1.0}};
    }
    const auto col = static_cast<std::size_t>(std::find(g->support.begin(), g->support.end(), m) - g->support.begin());
    std::vector<std::pair<Mode, Complex>> out;
    for (std::size_t row = 0; row < g->support.size(); ++row) {
        out.emplace_back(g->support[row], g->matrix(row, col));
    }
    return out;
}

inline std::vector<SingleParticlePath> particlePaths(const Circuit &c, Mode injected) {
    std::vector<SingleParticlePath> out;
    for (const auto &[afterInput, u] : branches(c.inputStage, injected)) {
        const Mode afterPerm = c.permutation(afterInput);
        for (const auto &[afterOutput, v] : branches(c.outputStage, afterPerm)) {
            out.push_back({{injected, afterInput, afterPerm, afterOutput}, u * v});
        }
    }
    return out;
}

}  // namespace detail

/// Exhaustive enumeration: one history per combination of single-particle
/// routes. Throws kTooManyHistories past one million histories.
inline std::vector<PathHistory> enumerateHistories(const Circuit &c, const Statistics &statistics) {
    requireValid(c);
    std::vector<Mode> injected = c.injections;
    std::sort(injected.begin(), injected.end());

    std::vector<std::vector<detail::SingleParticlePath>> routes;
    std::size_t total = 1;
    for (Mode m : injected) {
        routes.push_back(detail::particlePaths(c, m));
        total *= routes.back().size();
        if (total > kMaxHistories) {
            throw Error(ErrorCode::kTooManyHistories, "more than " + std::to_string(kMaxHistories) + " histories");
        }
    }

    std::vector<PathHistory> out;
    out.reserve(total);
    std::vector<std::size_t> choice(routes.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        PathHistory h;
        h.amplitude = 1.0;
        for (std::size_t p = 0; p < routes.size(); ++p) {
            const auto &route = routes[p][choice[p]];
            h.assignment.push_back(route.modes);
            h.amplitude *= route.amplitude;
        }
        const std::vector<Mode> finals = h.finalModes();
        std::vector<Mode> sorted = finals;
        std::sort(sorted.begin(), sorted.end());
        h.collides = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
        if (!h.collides) {
            h.amplitude *= canonicalize(finals, statistics).phase;
        }
        out.push_back(std::move(h));

        // Odometer over route choices, last particle fastest.
        for (std::size_t p = routes.size(); p-- > 0;) {
            if (++choice[p] < routes[p].size()) {
                break;
            }
            choice[p] = 0;
        }
    }
    return out;
}

/// Coherent sum of history amplitudes per final single-occupancy pattern.
/// Colliding histories are skipped.
inline std::map<std::vector<Mode>, Complex> sumByFinalPattern(const std::vector<PathHistory> &histories) {
    std::map<std::vector<Mode>, Complex> sums;
    for (const auto &h : histories) {
        if (h.collides) {
            continue;
        }
        std::vector<Mode> key = h.finalModes();
        std::sort(key.begin(), key.end());
        sums[key] += h.amplitude;
    }
    return sums;
}

struct TouchEvent {
    std::size_t historyIndex = 0;
    PathHistory history;
    Boundary stage = Boundary::kInjection;
    /// "mode 3" for co-occupancy at a boundary, or "input gate 0 {1,2}".
    std::string location;
};

struct TouchReport {
    std::vector<TouchEvent> counterexamples;
    std::size_t historiesExamined = 0;
    std::size_t historiesContributing = 0;

    bool pass() const {
        return counterexamples.empty();
    }
};

namespace detail {

inline void checkGates(const std::vector<LocalUnitary> &stage, std::string_view stageName, Boundary entry,
                       std::size_t index, const PathHistory &h, std::vector<TouchEvent> &events) {
    const auto b = static_cast<std::size_t>(entry);
    for (std::size_t g = 0; g < stage.size(); ++g) {
        int inside = 0;
        for (const auto &path : h.assignment) {
            if (contains(stage[g].support, path[b])) {
                ++inside;
            }
        }
        if (inside >= 2) {
            events.push_back({index, h, entry,
                              std::string(stageName) + " gate " + std::to_string(g) + " " +
                                  modeList(stage[g].support)});
        }
    }
}

}  // namespace detail

/// Certifies that every history which has nonzero amplitude and whose final
/// pattern is accepted keeps all particles apart, both at stage boundaries
/// and inside gates. Histories are counted individually, before
/// interference.
inline TouchReport verifyNoTouching(const Circuit &c, const Statistics &statistics) {
    const std::vector<PathHistory> histories = enumerateHistories(c, statistics);
    TouchReport report;
    report.historiesExamined = histories.size();
    for (std::size_t i = 0; i < histories.size(); ++i) {
        const PathHistory &h = histories[i];
        if (std::abs(h.amplitude) < kPruneTolerance) {
            continue;
        }
        const bool accepted = c.acceptAll || (!h.collides && matchesTargetPattern(h.finalModes(), c.targetPairs));
        if (!accepted) {
            continue;
        }
        ++report.historiesContributing;

        for (std::size_t b = 0; b < kNumBoundaries; ++b) {
            std::map<Mode, int> occupancy;
            for (const auto &path : h.assignment) {
                if (++occupancy[path[b]] == 2) {
                    report.counterexamples.push_back(
                        {i, h, static_cast<Boundary>(b), "mode " + std::to_string(path[b])});
                }
            }
        }
        detail::checkGates(c.inputStage, "input", Boundary::kInjection, i, h, report.counterexamples);
        detail::checkGates(c.outputStage, "output", Boundary::kAfterPermutation, i, h, report.counterexamples);
    }
    return report;
}

}  // namespace notouch
