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

#include "notouch/fock.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "gtest/gtest.h"

using namespace notouch;

namespace {

void expectComplexNear(Complex actual, Complex expected, double tol = 1e-12) {
    EXPECT_NEAR(actual.real(), expected.real(), tol);
    EXPECT_NEAR(actual.imag(), expected.imag(), tol);
}

std::vector<Mode> randomDistinctModes(std::mt19937_64 &rng, std::size_t count, int maxMode) {
    std::vector<Mode> pool(static_cast<std::size_t>(maxMode));
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count);
    return pool;
}

}  // namespace

TEST(Statistics, exchange_phases) {
    expectComplexNear(Statistics::boson().exchangePhase(), 1.0);
    expectComplexNear(Statistics::fermion().exchangePhase(), -1.0);
    expectComplexNear(Statistics::anyon(0.3).exchangePhase(), std::polar(1.0, 0.3));
}

TEST(Statistics, parse_tokens) {
    EXPECT_EQ(Statistics::parse("boson"), Statistics::boson());
    EXPECT_EQ(Statistics::parse("fermion"), Statistics::fermion());
    EXPECT_EQ(Statistics::parse("anyon:0.7"), Statistics::anyon(0.7));
    EXPECT_EQ(Statistics::parse(Statistics::anyon(-1.25).token()), Statistics::anyon(-1.25));
    EXPECT_THROW(Statistics::parse("anyon:"), Error);
    EXPECT_THROW(Statistics::parse("anyon:abc"), Error);
    EXPECT_THROW(Statistics::parse("anyon:inf"), Error);
    EXPECT_THROW(Statistics::parse("photon"), Error);
}

TEST(Canonicalize, fermion_single_swap) {
    const std::vector<Mode> raw = {3, 1};
    const auto c = canonicalize(raw, Statistics::fermion());
    EXPECT_EQ(c.modes, (std::vector<Mode>{1, 3}));
    expectComplexNear(c.phase, -1.0);
}

TEST(Canonicalize, sorted_boson_is_unchanged) {
    const std::vector<Mode> raw = {1, 3, 5};
    const auto c = canonicalize(raw, Statistics::boson());
    EXPECT_EQ(c.modes, raw);
    expectComplexNear(c.phase, 1.0);
}

TEST(Canonicalize, anyon_two_inversions) {
    const double theta = 0.41;
    const std::vector<Mode> raw = {4, 6, 2};
    const auto c = canonicalize(raw, Statistics::anyon(theta));
    EXPECT_EQ(c.modes, (std::vector<Mode>{2, 4, 6}));
    expectComplexNear(c.phase, std::polar(1.0, 2 * theta));
}

TEST(Canonicalize, duplicate_mode_is_rejected) {
    const std::vector<Mode> raw = {2, 5, 2};
    try {
        canonicalize(raw, Statistics::boson());
        FAIL() << "expected DuplicateMode";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDuplicateMode);
    }
}

TEST(Canonicalize, properties_over_random_orderings) {
    std::mt19937_64 rng(7);
    const std::vector<Statistics> all = {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.7),
                                         Statistics::anyon(-2.1)};
    for (int trial = 0; trial < 500; ++trial) {
        const auto raw = randomDistinctModes(rng, 1 + trial % 6, 9);
        for (const auto &stats : all) {
            const auto c = canonicalize(raw, stats);
            // |phase| = 1 exactly (up to rounding of cos/sin)
            EXPECT_NEAR(std::abs(c.phase), 1.0, 1e-15);
            EXPECT_TRUE(std::is_sorted(c.modes.begin(), c.modes.end()));
            // idempotent
            expectComplexNear(canonicalize(c.modes, stats).phase, 1.0);

            // Bubble sort by adjacent swaps: one exchange phase per swap.
            std::vector<Mode> work = raw;
            Complex stepwise = 1.0;
            for (std::size_t i = 0; i < work.size(); ++i) {
                for (std::size_t j = 0; j + 1 < work.size() - i; ++j) {
                    if (work[j] > work[j + 1]) {
                        std::swap(work[j], work[j + 1]);
                        stepwise *= stats.exchangePhase();
                    }
                }
            }
            expectComplexNear(c.phase, stepwise, 1e-12);
        }
        // theta = 0 behaves like bosons, theta = pi like fermions.
        expectComplexNear(canonicalize(raw, Statistics::anyon(0.0)).phase, canonicalize(raw, Statistics::boson()).phase);
        expectComplexNear(canonicalize(raw, Statistics::anyon(M_PI)).phase,
                          canonicalize(raw, Statistics::fermion()).phase, 1e-12);
    }
}

// Number of adjacent transpositions bubble sort needs to turn `from` into `to`.
static std::size_t adjacentSwaps(const std::vector<Mode> &from, const std::vector<Mode> &to) {
    std::vector<std::size_t> rank;
    for (Mode m : from) {
        rank.push_back(static_cast<std::size_t>(std::find(to.begin(), to.end(), m) - to.begin()));
    }
    std::size_t swaps = 0;
    for (std::size_t i = 0; i < rank.size(); ++i) {
        for (std::size_t j = 0; j + 1 < rank.size() - i; ++j) {
            if (rank[j] > rank[j + 1]) {
                std::swap(rank[j], rank[j + 1]);
                ++swaps;
            }
        }
    }
    return swaps;
}

TEST(Canonicalize, reorder_there_and_back) {
    // raw -> canonical, then canonical -> raw again by adjacent swaps. Bosons
    // and fermions end at +1; anyons keep e^{i theta (inv1 + inv2)}.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto raw = randomDistinctModes(rng, 1 + trial % 5, 8);
        const auto sorted = canonicalize(raw, Statistics::boson()).modes;
        const std::size_t inv1 = countInversions(raw);
        const std::size_t inv2 = adjacentSwaps(sorted, raw);
        EXPECT_EQ(inv1, inv2);
        for (const auto &stats : {Statistics::boson(), Statistics::fermion()}) {
            const Complex there = canonicalize(raw, stats).phase;
            const Complex back = stats.phaseForInversions(inv2);
            expectComplexNear(there * back, 1.0);
        }
        const auto any = Statistics::anyon(0.7);
        expectComplexNear(canonicalize(raw, any).phase * any.phaseForInversions(inv2),
                          std::polar(1.0, 0.7 * static_cast<double>(inv1 + inv2)), 1e-12);
    }
}

TEST(FockState, stores_only_canonical_terms) {
    TermMap bad;
    bad[TermKey{{3, 1}, {}}] = 1.0;
    EXPECT_THROW(FockState(4, bad), Error);

    TermMap outOfRange;
    outOfRange[TermKey{{1, 5}, {}}] = 1.0;
    EXPECT_THROW(FockState(4, outOfRange), Error);

    TermMap misaligned;
    misaligned[TermKey{{1, 2}, {1}}] = 1.0;
    EXPECT_THROW(FockState(4, misaligned), Error);

    EXPECT_THROW(FockState(0), Error);
}

TEST(FockState, prunes_tiny_amplitudes) {
    TermMap terms;
    terms[TermKey{{1}, {}}] = 1.0;
    terms[TermKey{{2}, {}}] = 1e-13;
    const FockState s(2, terms);
    EXPECT_EQ(s.size(), 1u);
    EXPECT_EQ(s.amplitude({2}), Complex{});
}

TEST(FockState, species_terms_allow_shared_modes) {
    TermMap terms;
    terms[TermKey{{2, 2}, {1, 2}}] = 1.0;
    const FockState s(3, terms);
    EXPECT_EQ(s.size(), 1u);

    TermMap unordered;
    unordered[TermKey{{2, 2}, {2, 1}}] = 1.0;
    EXPECT_THROW(FockState(3, unordered), Error);
}

TEST(InnerProduct, basics) {
    const FockState a1 = FockState::single(2, {1});
    const FockState a2 = FockState::single(2, {2});
    expectComplexNear(innerProduct(a1, a1), 1.0);
    expectComplexNear(innerProduct(a1, a2), 0.0);

    const double h = 1 / std::sqrt(2.0);
    const FockState plus = (a1 + a2).scaled(h);
    const FockState minus = (a1 - a2).scaled(h);
    expectComplexNear(innerProduct(plus, minus), 0.0);
    expectComplexNear(innerProduct(plus, plus), 1.0);
}

TEST(InnerProduct, conjugate_linear_in_first_argument) {
    const FockState a = FockState::single(3, {1, 2}, Complex(0.3, 0.4));
    const FockState b = FockState::single(3, {1, 2}, Complex(-0.5, 0.1));
    expectComplexNear(innerProduct(a, b), std::conj(Complex(0.3, 0.4)) * Complex(-0.5, 0.1));
    expectComplexNear(innerProduct(a.scaled(Complex(0, 1)), b), Complex(0, -1) * innerProduct(a, b));
    expectComplexNear(innerProduct(b, a), std::conj(innerProduct(a, b)));
}

TEST(InnerProduct, species_labels_are_orthogonal) {
    TermMap ta, tb;
    ta[TermKey{{1, 3}, {1, 2}}] = 1.0;
    tb[TermKey{{1, 3}, {2, 1}}] = 1.0;
    expectComplexNear(innerProduct(FockState(4, ta), FockState(4, tb)), 0.0);
    expectComplexNear(innerProduct(FockState(4, ta), FockState::single(4, {1, 3})), 0.0);
}

TEST(InnerProduct, dimension_mismatch) {
    try {
        innerProduct(FockState::single(2, {1}), FockState::single(3, {1}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    }
}

TEST(InnerProduct, positive_definite_on_random_states) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        TermMap terms;
        for (int t = 0; t < 6; ++t) {
            auto modes = randomDistinctModes(rng, 2, 6);
            std::sort(modes.begin(), modes.end());
            terms[TermKey{modes, {}}] += Complex(g(rng), g(rng));
        }
        const FockState s(6, terms);
        const Complex ip = innerProduct(s, s);
        EXPECT_GT(ip.real(), 0.0);
        EXPECT_NEAR(ip.imag(), 0.0, 1e-12);
        EXPECT_NEAR(norm(s), std::sqrt(ip.real()), 1e-12);
    }
}

TEST(Norm, single_term) {
    EXPECT_DOUBLE_EQ(norm(FockState::single(3, {2})), 1.0);
}

TEST(Norm, post_selected_bell_and_w_before_renormalization) {
    // (a1 a3 + a2 a4)/2
    TermMap bell;
    bell[TermKey{{1, 3}, {}}] = 0.5;
    bell[TermKey{{2, 4}, {}}] = 0.5;
    EXPECT_NEAR(norm(FockState(4, bell)), 1 / std::sqrt(2.0), 1e-15);

    // (a1 a4 a6 + a1 a3 a7 + a2 a3 a6)/(2 sqrt5)
    const double w = 1 / (2 * std::sqrt(5.0));
    TermMap wTerms;
    wTerms[TermKey{{1, 4, 6}, {}}] = w;
    wTerms[TermKey{{1, 3, 7}, {}}] = w;
    wTerms[TermKey{{2, 3, 6}, {}}] = w;
    EXPECT_NEAR(norm(FockState(7, wTerms)), std::sqrt(3.0) / (2 * std::sqrt(5.0)), 1e-15);
}
