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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "notouch/notouch.hpp"
#include "oracles.hpp"

using namespace notouch;

namespace {

constexpr double kTol = 1e-9;
constexpr double kPi = std::numbers::pi;

/// Norm and particle-number bookkeeping over every gate application.
struct ConservationLog {
    std::size_t gates = 0;
    double worstNorm = 0.0;
    bool particleNumberKept = true;
    double worstCompleteness = 0.0;

    void record(const FockState &before, const FockState &after, double bunched) {
        ++gates;
        worstNorm = std::max(worstNorm, std::abs(squaredNorm(before) - squaredNorm(after) - bunched));
        std::size_t n = 0;
        bool first = true;
        for (const auto *s : {&before, &after}) {
            for (const auto &[key, amp] : s->terms()) {
                if (first) {
                    n = key.modes.size();
                    first = false;
                }
                particleNumberKept = particleNumberKept && key.modes.size() == n;
            }
        }
    }
};

ConservationLog gLog;

RunOutput tracedRun(const Circuit &c, const Statistics &stats, bool distinguishable = false) {
    auto observer = [](const StepRecord &r) { gLog.record(*r.before, *r.after, r.bunchedWeight); };
    RunOutput out = distinguishable ? runDistinguishable(c, observer) : run(c, stats, observer);
    gLog.worstCompleteness = std::max(gLog.worstCompleteness, std::abs(out.probability + out.rejectedWeight() - 1));
    return out;
}

/// Applies the two measurement gates the correlation uses, for the log.
void traceMeasurement(const RunOutput &out, double t1, double t2) {
    FockState state = out.accepted;
    const double thetas[2] = {t1, t2};
    for (std::size_t k = 0; k < 2; ++k) {
        const LocalUnitary g{{out.targetPairs[k].first, out.targetPairs[k].second},
                             MeasurementSetting{thetas[k]}.unitary()};
        GateResult r = applyGateDetailed(state, g, out.statistics, BunchingPolicy::kDiscard);
        gLog.record(state, r.state, r.bunchedWeight);
        state = std::move(r.state);
    }
}

QubitState dualRail(const RunOutput &out, const Statistics &stats) {
    return extractDualRail(out.accepted, out.targetPairs, stats);
}

std::vector<double> grid37() {
    std::vector<double> g;
    for (int i = 0; i < 37; ++i) {
        g.push_back(2 * kPi * i / 37);
    }
    return g;
}

int failures = 0;

void report(int n, bool ok, const std::string &what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
    failures += ok ? 0 : 1;
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

void criterion1() {
    const RunOutput b = tracedRun(bellCircuit(), Statistics::boson());
    const FockState expected(4, {{TermKey{{1, 3}, {}}, 0.5}, {TermKey{{2, 4}, {}}, 0.5}});
    const double dB = maxAmplitudeDifference(b.accepted, expected);
    const RunOutput f = tracedRun(bellCircuit(), Statistics::fermion());
    const FockState flipped(4, {{TermKey{{1, 3}, {}}, 0.5}, {TermKey{{2, 4}, {}}, -0.5}});
    const double dF = maxAmplitudeDifference(f.accepted, flipped);
    const bool ok = dB < kTol && dF < kTol && std::abs(b.probability - 0.5) < kTol &&
                    std::abs(f.probability - 0.5) < kTol;
    report(1, ok, "Bell accepted state term-for-term (boson diff " + fmt(dB) + ", fermion sign flip diff " +
                      fmt(dF) + "), p = " + fmt(b.probability));
}

void criterion2() {
    const RunOutput b = tracedRun(ghzCircuit(), Statistics::boson());
    const RunOutput f = tracedRun(ghzCircuit(), Statistics::fermion());
    bool ok = std::abs(b.probability - 0.25) < kTol && std::abs(f.probability - 0.25) < kTol;
    const double bf = maxAmplitudeDifference(b.accepted, f.accepted);
    ok = ok && bf < kTol;
    double worstPhase = 0.0;
    for (double theta : {0.3, 0.7, 1.9, -2.5}) {
        const RunOutput a = tracedRun(ghzCircuit(), Statistics::anyon(theta));
        ok = ok && std::abs(a.probability - 0.25) < kTol;
        const Complex rel = a.accepted.amplitude({2, 4, 6}) / a.accepted.amplitude({1, 3, 5});
        worstPhase = std::max(worstPhase, std::abs(rel - std::polar(1.0, 2 * theta)));
    }
    ok = ok && worstPhase < kTol;
    report(2, ok, "GHZ p = " + fmt(b.probability) + ", boson/fermion diff " + fmt(bf) +
                      ", anyon relative phase error " + fmt(worstPhase));
}

void criterion3() {
    bool ok = true;
    double worstInfidelity = 0.0;
    double p = 0.0;
    for (const auto &stats : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.7)}) {
        const RunOutput out = tracedRun(wCircuit(), stats);
        p = out.probability;
        ok = ok && std::abs(out.probability - 3.0 / 20.0) < kTol;
        const double a = 1 / std::sqrt(3.0);
        const Complex s = stats.exchangePhase();
        const QubitState w(3, {0, a * s, a, 0, a * s, 0, 0, 0});
        worstInfidelity = std::max(worstInfidelity, 1 - fidelity(dualRail(out, stats), w));
    }
    ok = ok && worstInfidelity <= kTol;
    report(3, ok, "W p = " + fmt(p) + ", worst 1-fidelity " + fmt(worstInfidelity));
}

void criterion4() {
    const RunOutput b = tracedRun(bellCircuit(), Statistics::boson());
    const RunOutput f = tracedRun(bellCircuit(), Statistics::fermion());
    double worst = 0.0;
    for (double t1 : grid37()) {
        for (double t2 : grid37()) {
            worst = std::max(worst, std::abs(correlation(b, t1, t2) - std::cos(t1 - t2)));
            worst = std::max(worst, std::abs(correlation(f, t1, t2) - std::cos(t1 + t2)));
            traceMeasurement(b, t1, t2);
            traceMeasurement(f, t1, t2);
        }
    }
    report(4, worst < kTol, "indistinguishable correlation grid, worst cell error " + fmt(worst));
}

void criterion5() {
    const RunOutput d = tracedRun(bellCircuit(), Statistics::boson(), true);
    double worst = 0.0;
    for (double t1 : grid37()) {
        for (double t2 : grid37()) {
            worst = std::max(worst, std::abs(correlation(d, t1, t2) - std::cos(t1) * std::cos(t2)));
            traceMeasurement(d, t1, t2);
        }
    }
    // Outcome distribution over (qubit 1, qubit 2) at theta1 = theta2 = 0.
    auto distribution = [](const RunOutput &out) {
        std::array<double, 4> probs{};
        FockState state = out.accepted;
        for (std::size_t k = 0; k < 2; ++k) {
            const LocalUnitary g{{out.targetPairs[k].first, out.targetPairs[k].second},
                                 MeasurementSetting{0.0}.unitary()};
            state = applyGateDetailed(state, g, out.statistics, BunchingPolicy::kDiscard).state;
        }
        const PostSelection sel = postSelect(state, out.targetPairs);
        for (const auto &[key, amp] : sel.kept.terms()) {
            std::size_t index = 0;
            for (const auto &pair : out.targetPairs) {
                const bool down = std::find(key.modes.begin(), key.modes.end(), pair.second) != key.modes.end();
                index = 2 * index + (down ? 1 : 0);
            }
            probs[index] += std::norm(amp) / sel.probability;
        }
        return probs;
    };
    const auto pd = distribution(d);
    double distGap = 0.0;
    for (const auto &stats : {Statistics::boson(), Statistics::fermion()}) {
        const auto pi = distribution(tracedRun(bellCircuit(), stats));
        for (std::size_t i = 0; i < 4; ++i) {
            distGap = std::max(distGap, std::abs(pi[i] - pd[i]));
        }
    }
    report(5, worst < kTol && distGap < kTol,
           "distinguishable correlation grid, worst cell error " + fmt(worst) +
               "; basis distribution gap at (0,0) " + fmt(distGap));
}

void criterion6() {
    const RunOutput b = tracedRun(bellCircuit(), Statistics::boson());
    const double canonical = chshValue(b, 0, kPi / 2, kPi / 4, -kPi / 4, b.targetPairs);
    const RunOutput d = tracedRun(bellCircuit(), Statistics::boson(), true);
    const ChshOptimum classical = maximizeChshOnGrid(d, 360);
    const bool ok = std::abs(canonical - 2 * std::sqrt(2.0)) < 1e-3 && classical.value <= 2 + kTol;
    report(6, ok, "CHSH boson " + fmt(canonical) + " at canonical angles; distinguishable 1-degree grid max " +
                      fmt(classical.value));
}

void criterion7() {
    bool ok = true;
    for (const Circuit &c : {bellCircuit(), ghzCircuit(), wCircuit()}) {
        for (const auto &stats : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.7)}) {
            ok = ok && verifyNoTouching(c, stats).pass();
        }
    }
    const TouchReport hom = verifyNoTouching(hongOuMandelCircuit(), Statistics::boson());
    Circuit open = wCircuit();
    open.acceptAll = true;
    const TouchReport w = verifyNoTouching(open, Statistics::boson());
    ok = ok && !hom.pass() && !hom.counterexamples.empty() && !w.pass() && !w.counterexamples.empty();
    report(7, ok, "verifier passes 9 protocol runs; control circuits fail with " +
                      std::to_string(hom.counterexamples.size()) + " and " +
                      std::to_string(w.counterexamples.size()) + " counterexamples");
}

void criterion8() {
    double worst = 0.0;
    bool covered = true;
    for (const Circuit &c : {bellCircuit(), ghzCircuit(), wCircuit()}) {
        for (const auto &stats : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.7)}) {
            const auto sums = sumByFinalPattern(enumerateHistories(c, stats));
            const RunOutput out = tracedRun(c, stats);
            for (const auto &[pattern, amp] : sums) {
                worst = std::max(worst, std::abs(amp - out.preSelection.amplitude(pattern)));
            }
            for (const auto &[key, amp] : out.preSelection.terms()) {
                covered = covered && sums.contains(key.modes);
            }
        }
    }
    report(8, worst < kTol && covered, "history sums vs engine, worst amplitude error " + fmt(worst));
}

void criterion9() {
    std::mt19937_64 rng(9);
    double ghzErr = 0.0, wErr = 0.0, drift = 0.0;
    for (const auto &stats : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.7)}) {
        const QubitState ghz = dualRail(tracedRun(ghzCircuit(), stats), stats);
        const QubitState w = dualRail(tracedRun(wCircuit(), stats), stats);
        const double tg = threeTangle(ghz), tw = threeTangle(w);
        ghzErr = std::max(ghzErr, std::abs(tg - 1));
        wErr = std::max(wErr, std::abs(tw));
        for (int trial = 0; trial < 50; ++trial) {
            QubitState g2 = ghz, w2 = w;
            for (std::size_t q = 0; q < 3; ++q) {
                g2 = g2.withSingleQubitGate(q, oracle::haarRandomUnitary2(rng));
                w2 = w2.withSingleQubitGate(q, oracle::haarRandomUnitary2(rng));
            }
            drift = std::max({drift, std::abs(threeTangle(g2) - tg), std::abs(threeTangle(w2) - tw)});
        }
    }
    report(9, ghzErr < kTol && wErr < kTol && drift < 1e-8,
           "tangle GHZ error " + fmt(ghzErr) + ", W " + fmt(wErr) + ", local-unitary drift " + fmt(drift));
}

void criterion10() {
    std::mt19937_64 rng(10);
    double worst = 1.0;
    for (int trial = 0; trial < 100; ++trial) {
        const QubitState target = oracle::haarRandomState(2, rng);
        for (const auto &stats : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.7)}) {
            const RunOutput out = tracedRun(synthesizeTwoQubit(target, stats), stats);
            worst = std::min(worst, fidelity(dualRail(out, stats), target));
        }
    }
    report(10, worst >= 1 - kTol, "synthesis over 100 Haar targets, worst fidelity 1 - " + fmt(1 - worst));
}

void criterion11() {
    const bool ok = gLog.gates > 0 && gLog.worstNorm < kTol && gLog.particleNumberKept &&
                    gLog.worstCompleteness < kTol;
    report(11, ok, std::to_string(gLog.gates) + " gate applications, worst norm drift " + fmt(gLog.worstNorm) +
                       ", particle number " + (gLog.particleNumberKept ? "kept" : "broken") +
                       ", worst completeness error " + fmt(gLog.worstCompleteness));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
