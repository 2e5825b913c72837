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

// JSON circuit files:
//
//   {
//     "num_modes": 4,
//     "input_subsystems": [[1, 2], [3, 4]],
//     "injections": [1, 3],
//     "input_gates": [{"support": [1, 2], "matrix": [[[re, im], [re, im]], [[re, im], [re, im]]]}],
//     "permutation": [1, 4, 3, 2],
//     "output_gates": [],
//     "output_subsystems": [[1, 2], [3, 4]],
//     "target_pairs": [[1, 2], [3, 4]],
//     "accept_all": false
//   }
//
// Matrices are row-major. "accept_all" is optional and defaults to false.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "notouch/circuit.hpp"
#include "notouch/error.hpp"

namespace notouch {

namespace detail {

inline nlohmann::json matrixToJson(const Matrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrixFromJson(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw Error(ErrorCode::kParseError, "matrix must be an array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j[0].size();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw Error(ErrorCode::kParseError, "matrix rows must all have the same length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const auto &entry = j[r][c];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
                throw Error(ErrorCode::kParseError, "matrix entries must be [re, im] pairs");
            }
            m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

inline nlohmann::json stageToJson(const std::vector<LocalUnitary> &stage) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &g : stage) {
        out.push_back({{"support", g.support}, {"matrix", matrixToJson(g.matrix)}});
    }
    return out;
}

inline std::vector<LocalUnitary> stageFromJson(const nlohmann::json &j) {
    std::vector<LocalUnitary> out;
    for (const auto &g : j) {
        out.push_back({g.at("support").get<std::vector<Mode>>(), matrixFromJson(g.at("matrix"))});
    }
    return out;
}

}  // namespace detail

inline nlohmann::json circuitToJson(const Circuit &c) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto &[up, down] : c.targetPairs) {
        pairs.push_back({up, down});
    }
    nlohmann::json j = {
        {"num_modes", c.numModes},
        {"input_subsystems", c.inputSubsystems},
        {"injections", c.injections},
        {"input_gates", detail::stageToJson(c.inputStage)},
        {"permutation", c.permutation.oneLine()},
        {"output_gates", detail::stageToJson(c.outputStage)},
        {"output_subsystems", c.outputSubsystems},
        {"target_pairs", pairs},
    };
    if (c.acceptAll) {
        j["accept_all"] = true;
    }
    return j;
}

/// Structural problems (missing fields, wrong types) raise kParseError; the
/// circuit itself is not validated here.
inline Circuit circuitFromJson(const nlohmann::json &j) {
    try {
        Circuit c;
        c.numModes = j.at("num_modes").get<int>();
        c.inputSubsystems = j.at("input_subsystems").get<std::vector<std::vector<Mode>>>();
        c.injections = j.at("injections").get<std::vector<Mode>>();
        c.inputStage = detail::stageFromJson(j.at("input_gates"));
        c.permutation = PermutationSpec(j.at("permutation").get<std::vector<Mode>>());
        c.outputStage = detail::stageFromJson(j.at("output_gates"));
        c.outputSubsystems = j.at("output_subsystems").get<std::vector<std::vector<Mode>>>();
        for (const auto &p : j.at("target_pairs")) {
            if (!p.is_array() || p.size() != 2) {
                throw Error(ErrorCode::kParseError, "target pairs must have exactly two paths");
            }
            c.targetPairs.emplace_back(p[0].get<Mode>(), p[1].get<Mode>());
        }
        c.acceptAll = j.value("accept_all", false);
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::kParseError, e.what());
    }
}

inline Circuit loadCircuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kParseError, "cannot open circuit file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::kParseError, "'" + path + "': " + e.what());
    }
    return circuitFromJson(j);
}

inline void saveCircuit(const Circuit &c, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::kParseError, "cannot write circuit file '" + path + "'");
    }
    out << circuitToJson(c).dump(2) << "\n";
}

}  // namespace notouch
