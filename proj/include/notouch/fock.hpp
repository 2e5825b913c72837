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
 * @file fock.hpp
 * @brief Single-occupancy Fock states with statistics-dependent ordering.
 *
 * A term a_{m1}^dagger ... a_{mK}^dagger |0> is stored in canonical form,
 * i.e. with strictly increasing mode indices. Reordering a raw product into
 * canonical form costs one exchange phase per inversion: +1 for bosons, -1 for
 * fermions and e^{i theta} for abelian anyons.
 *
 * Distinguishable particles carry a species label per mode. Creation
 * operators of different species commute and never interfere, so such terms
 * are ordered by (mode, species) with no phase, and two species may share a
 * mode.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "notouch/error.hpp"
#include "notouch/matrix.hpp"

namespace notouch {

/// Paths are labeled 1..N.
using Mode = int;

class Statistics {
   public:
    enum class Kind { kBoson, kFermion, kAnyon };

    static Statistics boson() {
        return Statistics(Kind::kBoson, 0.0);
    }
    static Statistics fermion() {
        return Statistics(Kind::kFermion, 0.0);
    }
    static Statistics anyon(double theta) {
        return Statistics(Kind::kAnyon, theta);
    }

    Kind kind() const {
        return kind_;
    }
    double theta() const {
        return theta_;
    }

    /// Phase picked up by a single transposition of two creation operators.
    Complex exchangePhase() const {
        switch (kind_) {
            case Kind::kBoson: return 1.0;
            case Kind::kFermion: return -1.0;
            case Kind::kAnyon: return std::polar(1.0, theta_);
        }
        return 1.0;
    }

    /// exchangePhase()^inversions, evaluated without accumulating rounding.
    Complex phaseForInversions(std::size_t inversions) const {
        switch (kind_) {
            case Kind::kBoson: return 1.0;
            case Kind::kFermion: return inversions % 2 == 0 ? 1.0 : -1.0;
            case Kind::kAnyon: return std::polar(1.0, theta_ * static_cast<double>(inversions));
        }
        return 1.0;
    }

    /// boson | fermion | anyon:<theta>
    std::string token() const {
        switch (kind_) {
            case Kind::kBoson: return "boson";
            case Kind::kFermion: return "fermion";
            case Kind::kAnyon: {
                char buf[64];
                auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), theta_);
                return "anyon:" + std::string(buf, end);
            }
        }
        return "boson";
    }

    static Statistics parse(std::string_view text) {
        if (text == "boson") {
            return boson();
        }
        if (text == "fermion") {
            return fermion();
        }
        constexpr std::string_view prefix = "anyon:";
        if (text.starts_with(prefix)) {
            const std::string number(text.substr(prefix.size()));
            char *end = nullptr;
            const double theta = std::strtod(number.c_str(), &end);
            if (number.empty() || end != number.c_str() + number.size() || !std::isfinite(theta)) {
                throw Error(ErrorCode::kParseError, "anyon angle must be a finite real: '" + number + "'");
            }
            return anyon(theta);
        }
        throw Error(ErrorCode::kParseError, "unknown statistics '" + std::string(text) + "'");
    }

    bool operator==(const Statistics &) const = default;

   private:
    Statistics(Kind kind, double theta) : kind_(kind), theta_(theta) {
    }

    Kind kind_;
    double theta_;
};

struct CanonicalOrder {
    std::vector<Mode> modes;
    Complex phase;
};

inline std::size_t countInversions(std::span<const Mode> raw) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (raw[i] > raw[j]) {
                ++inversions;
            }
        }
    }
    return inversions;
}

/// Sorts a product of creation operators given in application order and
/// returns the exchange phase that the reordering costs.
inline CanonicalOrder canonicalize(std::span<const Mode> rawModes, const Statistics &statistics) {
    CanonicalOrder out{std::vector<Mode>(rawModes.begin(), rawModes.end()), 1.0};
    std::sort(out.modes.begin(), out.modes.end());
    if (std::adjacent_find(out.modes.begin(), out.modes.end()) != out.modes.end()) {
        throw Error(ErrorCode::kDuplicateMode, "mode occupied twice in a single-occupancy product");
    }
    out.phase = statistics.phaseForInversions(countInversions(rawModes));
    return out;
}

/// Occupation pattern of one term. `species` is empty for indistinguishable
/// particles; otherwise species[i] labels the particle sitting in modes[i].
struct TermKey {
    std::vector<Mode> modes;
    std::vector<int> species;

    auto operator<=>(const TermKey &) const = default;
    bool operator==(const TermKey &) const = default;

    bool distinguishable() const {
        return !species.empty();
    }
};

using TermMap = std::map<TermKey, Complex>;

struct FockTerm {
    TermKey key;
    Complex amplitude;
};

/// Sparse superposition of occupation patterns. Immutable once built; the
/// constructor validates every key and drops amplitudes below kPruneTolerance.
class FockState {
   public:
    explicit FockState(int numModes) : numModes_(numModes) {
        if (numModes < 1) {
            throw Error(ErrorCode::kDimensionMismatch, "a Fock state needs at least one mode");
        }
    }

    FockState(int numModes, TermMap terms) : FockState(numModes) {
        for (auto it = terms.begin(); it != terms.end();) {
            validateKey(it->first);
            if (std::abs(it->second) < kPruneTolerance) {
                it = terms.erase(it);
            } else {
                ++it;
            }
        }
        terms_ = std::move(terms);
    }

    /// One term with the given modes, which must already be canonical.
    static FockState single(int numModes, std::vector<Mode> modes, Complex amplitude = 1.0) {
        TermMap terms;
        terms[TermKey{std::move(modes), {}}] = amplitude;
        return FockState(numModes, std::move(terms));
    }

    int numModes() const {
        return numModes_;
    }
    const TermMap &terms() const {
        return terms_;
    }
    bool empty() const {
        return terms_.empty();
    }
    std::size_t size() const {
        return terms_.size();
    }

    Complex amplitude(const TermKey &key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Complex{} : it->second;
    }
    Complex amplitude(const std::vector<Mode> &modes) const {
        return amplitude(TermKey{modes, {}});
    }

    std::vector<FockTerm> termList() const {
        std::vector<FockTerm> out;
        out.reserve(terms_.size());
        for (const auto &[key, amp] : terms_) {
            out.push_back({key, amp});
        }
        return out;
    }

    FockState scaled(Complex factor) const {
        TermMap out = terms_;
        for (auto &[key, amp] : out) {
            amp *= factor;
        }
        return FockState(numModes_, std::move(out));
    }

    friend FockState operator+(const FockState &a, const FockState &b) {
        requireSameModes(a, b);
        TermMap out = a.terms_;
        for (const auto &[key, amp] : b.terms_) {
            out[key] += amp;
        }
        return FockState(a.numModes_, std::move(out));
    }

    friend FockState operator-(const FockState &a, const FockState &b) {
        return a + b.scaled(-1.0);
    }

    static void requireSameModes(const FockState &a, const FockState &b) {
        if (a.numModes_ != b.numModes_) {
            throw Error(ErrorCode::kDimensionMismatch, "states live on different numbers of modes (" +
                                                           std::to_string(a.numModes_) + " vs " +
                                                           std::to_string(b.numModes_) + ")");
        }
    }

   private:
    void validateKey(const TermKey &key) const {
        for (Mode m : key.modes) {
            if (m < 1 || m > numModes_) {
                throw Error(ErrorCode::kDimensionMismatch,
                            "mode " + std::to_string(m) + " outside [1, " + std::to_string(numModes_) + "]");
            }
        }
        if (!key.distinguishable()) {
            for (std::size_t i = 1; i < key.modes.size(); ++i) {
                if (key.modes[i - 1] >= key.modes[i]) {
                    throw Error(ErrorCode::kDuplicateMode, "term modes must be strictly increasing");
                }
            }
            return;
        }
        if (key.species.size() != key.modes.size()) {
            throw Error(ErrorCode::kDimensionMismatch, "species labels must align with modes");
        }
        for (std::size_t i = 1; i < key.modes.size(); ++i) {
            const auto prev = std::pair(key.modes[i - 1], key.species[i - 1]);
            const auto cur = std::pair(key.modes[i], key.species[i]);
            if (prev >= cur) {
                throw Error(ErrorCode::kDuplicateMode, "species-labelled term must be ordered by (mode, species)");
            }
        }
    }

    int numModes_;
    TermMap terms_;
};

/// <a|b>, antilinear in the first argument.
inline Complex innerProduct(const FockState &a, const FockState &b) {
    FockState::requireSameModes(a, b);
    Complex sum{};
    const auto &small = a.size() <= b.size() ? a.terms() : b.terms();
    const auto &large = a.size() <= b.size() ? b.terms() : a.terms();
    for (const auto &[key, amp] : small) {
        auto it = large.find(key);
        if (it == large.end()) {
            continue;
        }
        const Complex left = &small == &a.terms() ? amp : it->second;
        const Complex right = &small == &a.terms() ? it->second : amp;
        sum += std::conj(left) * right;
    }
    return sum;
}

inline double squaredNorm(const FockState &a) {
    double sum = 0.0;
    for (const auto &[key, amp] : a.terms()) {
        sum += std::norm(amp);
    }
    return sum;
}

inline double norm(const FockState &a) {
    return std::sqrt(squaredNorm(a));
}

/// Largest per-term amplitude difference; 0 for identical states.
inline double maxAmplitudeDifference(const FockState &a, const FockState &b) {
    const FockState diff = a - b;
    double worst = 0.0;
    for (const auto &[key, amp] : diff.terms()) {
        worst = std::max(worst, std::abs(amp));
    }
    return worst;
}

}  // namespace notouch
