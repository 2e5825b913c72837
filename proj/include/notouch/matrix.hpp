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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "notouch/error.hpp"

namespace notouch {

using Complex = std::complex<double>;

/// Magnitude below which amplitudes are dropped from stored states.
inline constexpr double kPruneTolerance = 1e-12;
/// Default tolerance for unitarity, normalization and reported comparisons.
inline constexpr double kTolerance = 1e-9;

/// Small dense row-major complex matrix. Gate matrices here are at most a
/// handful of modes wide, so no attempt is made at blocking or SIMD.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::kDimensionMismatch, "ragged matrix initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool isSquare() const {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    Matrix operator*(const Matrix &rhs) const {
        if (cols_ != rhs.rows_) {
            throw Error(ErrorCode::kDimensionMismatch, "matrix product shape mismatch");
        }
        Matrix out(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex a = (*this)(r, k);
                for (std::size_t c = 0; c < rhs.cols_; ++c) {
                    out(r, c) += a * rhs(k, c);
                }
            }
        }
        return out;
    }

    /// Largest entrywise deviation of U^dagger U from the identity.
    double unitarityDefect() const {
        if (!isSquare()) {
            return INFINITY;
        }
        const Matrix product = adjoint() * (*this);
        double worst = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                const Complex expected = r == c ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(product(r, c) - expected));
            }
        }
        return worst;
    }

    bool isUnitary(double tol = kTolerance) const {
        return unitarityDefect() <= tol;
    }

    bool operator==(const Matrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline double maxAbsDifference(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "matrix shapes differ");
    }
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
        }
    }
    return worst;
}

}  // namespace notouch
