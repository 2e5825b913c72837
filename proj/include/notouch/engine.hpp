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
 * @file engine.hpp
 * @brief Executes circuits on Fock states.
 *
 * A gate acts on creation operators column-wise,
 *   a^dagger_j -> sum_l U_{lj} a^dagger_l,
 * so every occupied mode in the support expands in place inside the ordered
 * product, and the resulting raw products are brought back to canonical
 * order with the exchange phase of the chosen statistics.
 *
 * Two identical particles that meet inside an output gate can leave through
 * the same path. Fermions cannot (the product vanishes). For bosons and
 * anyons such terms leave the single-occupancy space; they are always
 * rejected by post-selection, so run() drops them and reports their weight as
 * RunOutput::bunchedWeight. applyGate() with the default policy refuses them.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "notouch/circuit.hpp"
#include "notouch/error.hpp"
#include "notouch/fock.hpp"
#include "notouch/qubit_state.hpp"

namespace notouch {

enum class BunchingPolicy {
    /// Throw kDoubleOccupancy when a term would put two particles in a mode.
    kReject,
    /// Drop such terms and report their weight.
    kDiscard,
};

struct GateResult {
    FockState state;
    /// Squared norm carried away by multiply-occupied terms (kDiscard only).
    double bunchedWeight = 0.0;
};

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

/// Sorts a species-labelled raw product by (mode, species). No phase: the
/// particles are distinguishable.
inline TermKey speciesKey(const std::vector<Mode> &modes, const std::vector<int> &species) {
    std::vector<std::pair<Mode, int>> pairs;
    pairs.reserve(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        pairs.emplace_back(modes[i], species[i]);
    }
    std::sort(pairs.begin(), pairs.end());
    TermKey key;
    for (const auto &[m, s] : pairs) {
        key.modes.push_back(m);
        key.species.push_back(s);
    }
    return key;
}

/// Accumulates raw products into canonical terms, routing multiply-occupied
/// products according to the policy.
class RawAccumulator {
   public:
    RawAccumulator(const Statistics &statistics, BunchingPolicy policy) : statistics_(statistics), policy_(policy) {
    }

    void add(const std::vector<Mode> &raw, const std::vector<int> &species, Complex amp) {
        if (!species.empty()) {
            terms_[speciesKey(raw, species)] += amp;
            return;
        }
        std::vector<Mode> sorted = raw;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
            const CanonicalOrder canon = canonicalize(raw, statistics_);
            terms_[TermKey{canon.modes, {}}] += amp * canon.phase;
            return;
        }
        if (statistics_.kind() == Statistics::Kind::kFermion) {
            return;  // Pauli exclusion: a^dagger_m a^dagger_m = 0.
        }
        if (policy_ == BunchingPolicy::kReject) {
            throw Error(ErrorCode::kDoubleOccupancy, "gate output places two particles in one mode");
        }
        // Bosonic operators commute, so the multiset alone identifies the term.
        bunched_[sorted] += amp;
        anyBunched_ = true;
    }

    GateResult finish(int numModes, double inputWeight) {
        FockState state(numModes, std::move(terms_));
        double weight = 0.0;
        if (anyBunched_) {
            if (statistics_.kind() == Statistics::Kind::kBoson) {
                // |(a^dagger)^n|0>|^2 = n!
                for (const auto &[modes, amp] : bunched_) {
                    double occupancyFactor = 1.0;
                    for (std::size_t i = 0; i < modes.size();) {
                        std::size_t j = i;
                        while (j < modes.size() && modes[j] == modes[i]) {
                            ++j;
                        }
                        occupancyFactor *= factorial(static_cast<int>(j - i));
                        i = j;
                    }
                    weight += std::norm(amp) * occupancyFactor;
                }
            } else {
                // The abelian exchange rule says nothing about two anyons in
                // one mode; account for that sector by unitarity instead.
                weight = std::max(0.0, inputWeight - squaredNorm(state));
            }
        }
        return GateResult{std::move(state), weight};
    }

   private:
    Statistics statistics_;
    BunchingPolicy policy_;
    TermMap terms_;
    std::map<std::vector<Mode>, Complex> bunched_;
    bool anyBunched_ = false;
};

inline void applyLocal(const FockState &s, const LocalUnitary &gate, RawAccumulator &acc) {
    for (Mode m : gate.support) {
        if (m < 1 || m > s.numModes()) {
            throw Error(ErrorCode::kDimensionMismatch, "gate support " + detail::modeList(gate.support) +
                                                           " outside the state's modes");
        }
    }
    auto column = [&](Mode m) -> int {
        auto it = std::find(gate.support.begin(), gate.support.end(), m);
        return it == gate.support.end() ? -1 : static_cast<int>(it - gate.support.begin());
    };

    for (const auto &[key, amp] : s.terms()) {
        std::vector<std::size_t> positions;
        std::vector<int> columns;
        for (std::size_t p = 0; p < key.modes.size(); ++p) {
            const int col = column(key.modes[p]);
            if (col >= 0) {
                positions.push_back(p);
                columns.push_back(col);
            }
        }
        std::vector<Mode> raw = key.modes;
        // Depth-first over the output row chosen for each particle in the support.
        std::function<void(std::size_t, Complex)> expand = [&](std::size_t depth, Complex partial) {
            if (depth == positions.size()) {
                acc.add(raw, key.species, partial);
                return;
            }
            const auto col = static_cast<std::size_t>(columns[depth]);
            for (std::size_t row = 0; row < gate.support.size(); ++row) {
                const Complex u = gate.matrix(row, col);
                if (u == Complex{}) {
                    continue;
                }
                raw[positions[depth]] = gate.support[row];
                expand(depth + 1, partial * u);
            }
            raw[positions[depth]] = key.modes[positions[depth]];
        };
        expand(0, amp);
    }
}

inline void applyPermutation(const FockState &s, const PermutationSpec &sigma, RawAccumulator &acc) {
    if (sigma.size() != s.numModes()) {
        throw Error(ErrorCode::kDimensionMismatch, "permutation acts on " + std::to_string(sigma.size()) +
                                                       " modes, state has " + std::to_string(s.numModes()));
    }
    for (const auto &[key, amp] : s.terms()) {
        std::vector<Mode> raw;
        raw.reserve(key.modes.size());
        for (Mode m : key.modes) {
            raw.push_back(sigma(m));
        }
        acc.add(raw, key.species, amp);
    }
}

}  // namespace detail

inline GateResult applyGateDetailed(const FockState &s, const Gate &gate, const Statistics &statistics,
                                    BunchingPolicy policy) {
    detail::RawAccumulator acc(statistics, policy);
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, LocalUnitary>) {
                detail::applyLocal(s, g, acc);
            } else {
                detail::applyPermutation(s, g, acc);
            }
        },
        gate);
    return acc.finish(s.numModes(), squaredNorm(s));
}

inline FockState applyGate(const FockState &s, const Gate &gate, const Statistics &statistics) {
    return applyGateDetailed(s, gate, statistics, BunchingPolicy::kReject).state;
}

/// a^dagger_{i_1} ... a^dagger_{i_K}|0> in canonical order with amplitude 1.
/// In distinguishable mode particle k carries species k, k following the
/// order of c.injections.
inline FockState inject(const Circuit &c, bool distinguishable = false) {
    requireValid(c);
    TermMap terms;
    if (distinguishable) {
        std::vector<int> species(c.injections.size());
        for (std::size_t k = 0; k < species.size(); ++k) {
            species[k] = static_cast<int>(k + 1);
        }
        terms[detail::speciesKey(c.injections, species)] = 1.0;
    } else {
        std::vector<Mode> modes = c.injections;
        std::sort(modes.begin(), modes.end());
        terms[TermKey{modes, {}}] = 1.0;
    }
    return FockState(c.numModes, std::move(terms));
}

/// True iff each pair holds exactly one particle and no particle sits
/// outside the pairs.
inline bool matchesTargetPattern(const std::vector<Mode> &modes, const std::vector<std::pair<Mode, Mode>> &pairs) {
    if (modes.size() != pairs.size()) {
        return false;
    }
    for (const auto &[up, down] : pairs) {
        const auto inPair = std::count_if(modes.begin(), modes.end(), [&](Mode m) { return m == up || m == down; });
        if (inPair != 1) {
            return false;
        }
    }
    return true;
}

struct PostSelection {
    FockState kept;
    double probability = 0.0;
};

/// Projects onto one particle per target pair. The returned probability is
/// the squared norm of the kept part (the input is assumed normalized).
inline PostSelection postSelect(const FockState &s, const std::vector<std::pair<Mode, Mode>> &pairs) {
    TermMap kept;
    for (const auto &[key, amp] : s.terms()) {
        if (matchesTargetPattern(key.modes, pairs)) {
            kept[key] = amp;
        }
    }
    FockState state(s.numModes(), std::move(kept));
    const double p = squaredNorm(state);
    return PostSelection{std::move(state), p};
}

struct StepRecord {
    std::string stage;
    std::size_t index = 0;
    const FockState *before = nullptr;
    const FockState *after = nullptr;
    double bunchedWeight = 0.0;
};

using StepObserver = std::function<void(const StepRecord &)>;

struct RunOutput {
    Statistics statistics = Statistics::boson();
    bool distinguishable = false;
    /// Full single-occupancy state after the output stage.
    FockState preSelection{1};
    /// Unnormalized projection of preSelection onto the target pattern.
    FockState accepted{1};
    double probability = 0.0;
    /// Weight that left the single-occupancy space inside output gates.
    double bunchedWeight = 0.0;
    std::vector<std::pair<Mode, Mode>> targetPairs;

    /// Squared norm of everything post-selection throws away.
    double rejectedWeight() const {
        return squaredNorm(preSelection - accepted) + bunchedWeight;
    }
};

namespace detail {

inline RunOutput execute(const Circuit &c, const Statistics &statistics, bool distinguishable,
                         const StepObserver &observer) {
    FockState state = inject(c, distinguishable);
    double bunched = 0.0;
    auto step = [&](const Gate &gate, std::string_view stage, std::size_t index) {
        GateResult result = applyGateDetailed(state, gate, statistics, BunchingPolicy::kDiscard);
        if (observer) {
            observer(StepRecord{std::string(stage), index, &state, &result.state, result.bunchedWeight});
        }
        bunched += result.bunchedWeight;
        state = std::move(result.state);
    };
    for (std::size_t g = 0; g < c.inputStage.size(); ++g) {
        step(c.inputStage[g], "input", g);
    }
    step(c.permutation, "permutation", 0);
    for (std::size_t g = 0; g < c.outputStage.size(); ++g) {
        step(c.outputStage[g], "output", g);
    }

    RunOutput out;
    out.statistics = statistics;
    out.distinguishable = distinguishable;
    out.targetPairs = c.targetPairs;
    out.bunchedWeight = bunched;
    if (c.acceptAll) {
        out.accepted = state;
        out.probability = squaredNorm(state);
    } else {
        PostSelection selected = postSelect(state, c.targetPairs);
        out.accepted = std::move(selected.kept);
        out.probability = selected.probability;
    }
    out.preSelection = std::move(state);
    return out;
}

}  // namespace detail

/// Injection, input stage, permutation, output stage, post-selection.
inline RunOutput run(const Circuit &c, const Statistics &statistics, const StepObserver &observer = {}) {
    return detail::execute(c, statistics, false, observer);
}

/// Same pipeline with every particle carrying its own species label.
inline RunOutput runDistinguishable(const Circuit &c, const StepObserver &observer = {}) {
    return detail::execute(c, Statistics::boson(), true, observer);
}

/// Reads the post-selected state as K dual-rail qubits: a particle on the
/// first path of pair k is |up> (bit 0), on the second |down> (bit 1).
/// Amplitudes come from the canonical ascending-mode form.
inline QubitState extractDualRail(const FockState &accepted, const std::vector<std::pair<Mode, Mode>> &pairs,
                                  const Statistics & /*statistics*/) {
    if (accepted.empty()) {
        throw Error(ErrorCode::kZeroState, "nothing survived post-selection");
    }
    const std::size_t k = pairs.size();
    std::vector<Complex> amps(std::size_t{1} << k);
    for (const auto &[key, amp] : accepted.terms()) {
        if (key.distinguishable()) {
            throw Error(ErrorCode::kPatternMismatch,
                        "species-labelled terms do not map onto a pure dual-rail state");
        }
        if (!matchesTargetPattern(key.modes, pairs)) {
            throw Error(ErrorCode::kPatternMismatch, "term " + detail::modeList(key.modes) +
                                                         " does not hold one particle per target pair");
        }
        std::size_t index = 0;
        for (std::size_t q = 0; q < k; ++q) {
            const bool down = std::find(key.modes.begin(), key.modes.end(), pairs[q].second) != key.modes.end();
            index = (index << 1) | (down ? 1u : 0u);
        }
        amps[index] += amp;
    }
    return QubitState(k, std::move(amps)).normalized();
}

}  // namespace notouch
