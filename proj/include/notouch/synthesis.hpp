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
 * @file synthesis.hpp
 * @brief Bell-topology circuits for arbitrary two-qubit targets.
 *
 * The Bell circuit with a general beam splitter (alpha, beta) on A_1 yields,
 * after post-selection, alpha|00> + s beta|11> where s is the exchange phase
 * of one transposition. Writing the target in Schmidt form
 *   psi = lambda_1 u_1 (x) v_1 + lambda_2 u_2 (x) v_2
 * and appending the local unitaries [u_1 u_2] on B_1 and [v_1 conj(s) v_2] on
 * B_2 therefore reproduces psi exactly.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "notouch/circuit.hpp"
#include "notouch/error.hpp"
#include "notouch/fock.hpp"
#include "notouch/matrix.hpp"
#include "notouch/qubit_state.hpp"

namespace notouch {

struct SchmidtDecomposition {
    /// Nonnegative, descending.
    std::array<double, 2> coefficients{};
    /// Columns are u_1, u_2.
    Matrix left{2, 2};
    /// Columns are v_1, v_2, with psi = sum_k coefficients[k] u_k (x) v_k.
    Matrix right{2, 2};

    int rank(double tol = kTolerance) const {
        return (coefficients[0] > tol ? 1 : 0) + (coefficients[1] > tol ? 1 : 0);
    }
};

namespace detail {

using Vec2 = std::array<Complex, 2>;

inline Vec2 orthogonalComplement(const Vec2 &v) {
    return {-std::conj(v[1]), std::conj(v[0])};
}

inline Vec2 normalizedVec(Vec2 v) {
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return {v[0] / n, v[1] / n};
}

/// Rotates the global phase so the first non-negligible entry is real positive.
inline Vec2 fixPhase(Vec2 v) {
    const Complex lead = std::abs(v[0]) > kPruneTolerance ? v[0] : v[1];
    const Complex rot = std::conj(lead) / std::abs(lead);
    return {v[0] * rot, v[1] * rot};
}

}  // namespace detail

/// Schmidt form of a normalized two-qubit state, via the eigenvectors of the
/// 2x2 Hermitian matrix C C^dagger (C_ij = psi_{2i+j}). Degenerate spectra
/// fall back to the standard basis on the first qubit.
inline SchmidtDecomposition schmidtDecompose(const QubitState &psi) {
    if (psi.numQubits() != 2) {
        throw Error(ErrorCode::kDimensionMismatch, "Schmidt decomposition needs a two-qubit state");
    }
    const Complex c00 = psi[0], c01 = psi[1], c10 = psi[2], c11 = psi[3];
    const double a = std::norm(c00) + std::norm(c01);
    const double d = std::norm(c10) + std::norm(c11);
    const Complex b = c00 * std::conj(c10) + c01 * std::conj(c11);
    const double mean = 0.5 * (a + d);
    const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    const double top = mean + radius;
    const double bottom = std::max(0.0, mean - radius);

    detail::Vec2 u1{1.0, 0.0};
    if (radius > kPruneTolerance) {
        if (std::abs(b) > kPruneTolerance) {
            u1 = detail::fixPhase(detail::normalizedVec({b, top - a}));
        } else if (d > a) {
            u1 = {0.0, 1.0};
        }
    }
    const detail::Vec2 u2 = detail::orthogonalComplement(u1);

    SchmidtDecomposition out;
    out.coefficients = {std::sqrt(top), std::sqrt(bottom)};

    // v_k = C^T conj(u_k) / lambda_k
    auto project = [&](const detail::Vec2 &u) -> detail::Vec2 {
        return {c00 * std::conj(u[0]) + c10 * std::conj(u[1]), c01 * std::conj(u[0]) + c11 * std::conj(u[1])};
    };
    const detail::Vec2 v1 = detail::normalizedVec(project(u1));
    detail::Vec2 v2 = detail::orthogonalComplement(v1);
    if (out.coefficients[1] > kPruneTolerance) {
        const detail::Vec2 raw = project(u2);
        const Complex overlap = std::conj(v2[0]) * raw[0] + std::conj(v2[1]) * raw[1];
        const Complex rot = overlap / std::abs(overlap);
        v2 = {v2[0] * rot, v2[1] * rot};
    }

    for (std::size_t r = 0; r < 2; ++r) {
        out.left(r, 0) = u1[r];
        out.left(r, 1) = u2[r];
        out.right(r, 0) = v1[r];
        out.right(r, 1) = v2[r];
    }
    return out;
}

/// Builds a four-path circuit with the Bell topology whose post-selected
/// output under `statistics` is `target` (up to a global phase).
inline Circuit synthesizeTwoQubit(const QubitState &target, const Statistics &statistics) {
    if (target.numQubits() != 2) {
        throw Error(ErrorCode::kDimensionMismatch, "two-qubit synthesis needs a two-qubit target");
    }
    if (!target.isNormalized(kTolerance)) {
        throw Error(ErrorCode::kNotNormalized, "target norm is " + std::to_string(target.norm()));
    }
    const SchmidtDecomposition schmidt = schmidtDecompose(target);
    const double alpha = schmidt.coefficients[0];
    const double beta = schmidt.coefficients[1];

    Circuit c = bellCircuit();
    c.inputStage[0] = LocalUnitary{{1, 2}, Matrix{{alpha, beta}, {beta, -alpha}}};

    // Cancels the exchange phase on the |11> branch.
    const Complex undo = std::conj(statistics.phaseForInversions(1));
    Matrix second = schmidt.right;
    second(0, 1) *= undo;
    second(1, 1) *= undo;
    c.outputStage = {LocalUnitary{{1, 2}, schmidt.left}, LocalUnitary{{3, 4}, second}};
    return c;
}

}  // namespace notouch
