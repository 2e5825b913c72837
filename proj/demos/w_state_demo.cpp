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

// Walks through the W-state protocol: runs it for each statistics, prints
// the post-selected dual-rail state, the success probability, the
// three-tangle and the no-touching verdict.

#include <cstdio>

#include "notouch/notouch.hpp"

int main() {
    using namespace notouch;
    const Circuit w = wCircuit();
    for (const Statistics &stats : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.7)}) {
        const RunOutput out = run(w, stats);
        const QubitState q = extractDualRail(out.accepted, w.targetPairs, stats);
        std::printf("%s: p = %.6f, tangle = %.3g, no-touching = %s\n", stats.token().c_str(), out.probability,
                    threeTangle(q), verifyNoTouching(w, stats).pass() ? "pass" : "fail");
        for (std::size_t i = 0; i < q.dimension(); ++i) {
            if (std::abs(q[i]) > kTolerance) {
                std::printf("  |%zu%zu%zu>  % .6f %+.6fi\n", (i >> 2) & 1, (i >> 1) & 1, i & 1, q[i].real(),
                            q[i].imag());
            }
        }
    }
    return 0;
}
