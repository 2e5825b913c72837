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

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "notouch/error.hpp"
#include "notouch/matrix.hpp"

namespace notouch {

/// Dense K-qubit state. Basis index bit (K-1-k) holds qubit k (0-based), so
/// qubit 1 is the most significant bit; |up> = 0 and |down> = 1.
class QubitState {
   public:
    QubitState() = default;
    QubitState(std::size_t numQubits, std::vector<Complex> amplitudes)
        : numQubits_(numQubits), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != (std::size_t{1} << numQubits_)) {
            throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(std::size_t{1} << numQubits_) +
                                                           " amplitudes for " + std::to_string(numQubits_) +
                                                           " qubits, got " + std::to_string(amplitudes_.size()));
        }
    }

    static QubitState basis(std::size_t numQubits, std::size_t index) {
        std::vector<Complex> amps(std::size_t{1} << numQubits);
        amps.at(index) = 1.0;
        return QubitState(numQubits, std::move(amps));
    }

    std::size_t numQubits() const {
        return numQubits_;
    }
    std::size_t dimension() const {
        return amplitudes_.size();
    }
    const std::vector<Complex> &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](std::size_t index) const {
        return amplitudes_[index];
    }

    double norm() const {
        double sum = 0.0;
        for (Complex a : amplitudes_) {
            sum += std::norm(a);
        }
        return std::sqrt(sum);
    }

    bool isNormalized(double tol = kTolerance) const {
        return std::abs(norm() - 1.0) <= tol;
    }

    QubitState normalized() const {
        const double n = norm();
        if (n < kPruneTolerance) {
            throw Error(ErrorCode::kZeroState, "cannot normalize the zero vector");
        }
        std::vector<Complex> amps = amplitudes_;
        for (Complex &a : amps) {
            a /= n;
        }
        return QubitState(numQubits_, std::move(amps));
    }

    /// Applies a 2x2 unitary to qubit k (0-based), in place on a copy.
    QubitState withSingleQubitGate(std::size_t qubit, const Matrix &u) const {
        if (qubit >= numQubits_ || u.rows() != 2 || u.cols() != 2) {
            throw Error(ErrorCode::kDimensionMismatch, "single-qubit gate needs a 2x2 matrix and a valid qubit");
        }
        std::vector<Complex> out = amplitudes_;
        const std::size_t bit = std::size_t{1} << (numQubits_ - 1 - qubit);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i & bit) {
                continue;
            }
            const Complex a0 = amplitudes_[i];
            const Complex a1 = amplitudes_[i | bit];
            out[i] = u(0, 0) * a0 + u(0, 1) * a1;
            out[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
        }
        return QubitState(numQubits_, std::move(out));
    }

   private:
    std::size_t numQubits_ = 0;
    std::vector<Complex> amplitudes_{1.0};
};

}  // namespace notouch
