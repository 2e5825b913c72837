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
 * @file analysis.hpp
 * @brief Correlation experiments, CHSH, fidelity and the three-tangle.
 *
 * Measurements follow the optical recipe: a real local unitary
 * [[cos(t/2), sin(t/2)], [sin(t/2), -cos(t/2)]] on each target pair, then path
 * detection. A click on the first path of a pair counts +1, on the second -1.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "notouch/engine.hpp"
#include "notouch/error.hpp"
#include "notouch/qubit_state.hpp"

namespace notouch {

struct MeasurementSetting {
    double theta = 0.0;

    Matrix unitary() const {
        const double p = std::cos(theta / 2.0);
        const double q = std::sin(theta / 2.0);
        return Matrix{{p, q}, {q, -p}};
    }
};

/// <product of +/-1 outcomes> over the post-selected distribution after the
/// settings' unitaries are applied to their pairs.
inline double correlation(const RunOutput &out, const std::vector<MeasurementSetting> &settings,
                          const std::vector<std::pair<Mode, Mode>> &pairs) {
    if (settings.size() != pairs.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "need one measurement setting per target pair");
    }
    if (out.probability <= kPruneTolerance || out.accepted.empty()) {
        throw Error(ErrorCode::kZeroProbability, "run output has no accepted events");
    }
    FockState state = out.accepted;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const LocalUnitary gate{{pairs[k].first, pairs[k].second}, settings[k].unitary()};
        state = applyGateDetailed(state, gate, out.statistics, BunchingPolicy::kDiscard).state;
    }
    const PostSelection selected = postSelect(state, pairs);
    if (selected.probability <= kPruneTolerance) {
        throw Error(ErrorCode::kZeroProbability, "no events survive re-post-selection");
    }
    double weighted = 0.0;
    for (const auto &[key, amp] : selected.kept.terms()) {
        int sign = 1;
        for (const auto &[up, down] : pairs) {
            if (std::find(key.modes.begin(), key.modes.end(), down) != key.modes.end()) {
                sign = -sign;
            }
        }
        weighted += sign * std::norm(amp);
    }
    return weighted / selected.probability;
}

inline double correlation(const RunOutput &out, double theta1, double theta2) {
    return correlation(out, {{theta1}, {theta2}}, out.targetPairs);
}

/// E(a,b) + E(a,b') + E(a',b) - E(a',b').
inline double chshValue(const RunOutput &out, double a, double aPrime, double b, double bPrime,
                        const std::vector<std::pair<Mode, Mode>> &pairs) {
    auto e = [&](double x, double y) { return correlation(out, {{x}, {y}}, pairs); };
    return e(a, b) + e(a, bPrime) + e(aPrime, b) - e(aPrime, bPrime);
}

struct ChshOptimum {
    double value = 0.0;
    std::array<double, 4> angles{};  // a, a', b, b'
};

/// Exact maximum of the CHSH combination over a uniform grid of `steps`
/// angles in [0, 2pi) for every setting. The objective separates once (a, a')
/// is fixed, so the search costs steps^3 instead of steps^4 evaluations of a
/// precomputed correlation table.
inline ChshOptimum maximizeChshOnGrid(const RunOutput &out, int steps = 360) {
    const auto n = static_cast<std::size_t>(steps);
    const double step = 2.0 * std::numbers::pi / steps;
    std::vector<double> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            table[i * n + j] = correlation(out, step * static_cast<double>(i), step * static_cast<double>(j));
        }
    }
    auto e = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

    ChshOptimum best{-INFINITY, {}};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t ap = 0; ap < n; ++ap) {
            double bestSum = -INFINITY, bestDiff = -INFINITY;
            std::size_t bArg = 0, bpArg = 0;
            for (std::size_t b = 0; b < n; ++b) {
                const double sum = e(a, b) + e(ap, b);
                const double diff = e(a, b) - e(ap, b);
                if (sum > bestSum) {
                    bestSum = sum;
                    bArg = b;
                }
                if (diff > bestDiff) {
                    bestDiff = diff;
                    bpArg = b;
                }
            }
            if (bestSum + bestDiff > best.value) {
                best.value = bestSum + bestDiff;
                best.angles = {step * static_cast<double>(a), step * static_cast<double>(ap),
                               step * static_cast<double>(bArg), step * static_cast<double>(bpArg)};
            }
        }
    }
    return best;
}

/// Grid search followed by compass-search refinement of all four angles.
/// The located maximum is accurate to about `tol`.
inline ChshOptimum maximizeChsh(const RunOutput &out, int steps = 360, double tol = 1e-3) {
    ChshOptimum best = maximizeChshOnGrid(out, steps);
    auto evaluate = [&](const std::array<double, 4> &x) { return chshValue(out, x[0], x[1], x[2], x[3], out.targetPairs); };
    double delta = 2.0 * std::numbers::pi / steps;
    // Shrink the pattern until angle moves are far below the value tolerance.
    while (delta > tol * 1e-3) {
        bool improved = false;
        for (std::size_t k = 0; k < 4; ++k) {
            for (double dir : {1.0, -1.0}) {
                std::array<double, 4> trial = best.angles;
                trial[k] += dir * delta;
                const double v = evaluate(trial);
                if (v > best.value) {
                    best = {v, trial};
                    improved = true;
                }
            }
        }
        if (!improved) {
            delta *= 0.5;
        }
    }
    return best;
}

/// |<target|s>|^2
inline double fidelity(const QubitState &s, const QubitState &target) {
    if (s.numQubits() != target.numQubits()) {
        throw Error(ErrorCode::kDimensionMismatch, "fidelity between states of different qubit counts");
    }
    Complex overlap{};
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        overlap += std::conj(target[i]) * s[i];
    }
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

/// Three-tangle 4|d1 - 2 d2 + 4 d3| from Cayley's hyperdeterminant. Positive
/// on the GHZ class, zero on the W class and on anything not genuinely
/// tripartite entangled.
inline double threeTangle(const QubitState &s) {
    if (s.numQubits() != 3) {
        throw Error(ErrorCode::kDimensionMismatch, "three-tangle needs a three-qubit state");
    }
    auto a = [&](int i, int j, int k) {
        const Complex v = s[static_cast<std::size_t>(4 * i + 2 * j + k)];
        return std::abs(v) < kPruneTolerance ? Complex{} : v;
    };
    const Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
                       a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                       a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
                       a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                       a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                       a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    Complex hyper = d1 - 2.0 * d2 + 4.0 * d3;
    if (std::abs(hyper) < kPruneTolerance) {
        hyper = 0.0;
    }
    return std::clamp(4.0 * std::abs(hyper), 0.0, 1.0);
}

}  // namespace notouch
