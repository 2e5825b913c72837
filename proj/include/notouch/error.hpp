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

#include <stdexcept>
#include <string>
#include <string_view>

namespace notouch {

enum class ErrorCode {
    kDuplicateMode,
    kDimensionMismatch,
    kSameMode,
    kNotNormalized,
    kNotBijective,
    kInvalidCircuit,
    kDoubleOccupancy,
    kPatternMismatch,
    kZeroState,
    kZeroProbability,
    kTooManyHistories,
    kParseError,
};

inline std::string_view errorCodeName(ErrorCode code) {
    switch (code) {
        case ErrorCode::kDuplicateMode: return "DuplicateMode";
        case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
        case ErrorCode::kSameMode: return "SameMode";
        case ErrorCode::kNotNormalized: return "NotNormalized";
        case ErrorCode::kNotBijective: return "NotBijective";
        case ErrorCode::kInvalidCircuit: return "InvalidCircuit";
        case ErrorCode::kDoubleOccupancy: return "DoubleOccupancy";
        case ErrorCode::kPatternMismatch: return "PatternMismatch";
        case ErrorCode::kZeroState: return "ZeroState";
        case ErrorCode::kZeroProbability: return "ZeroProbability";
        case ErrorCode::kTooManyHistories: return "TooManyHistories";
        case ErrorCode::kParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(errorCodeName(code)) + ": " + message), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace notouch
