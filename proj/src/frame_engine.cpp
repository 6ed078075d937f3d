// Copyright 2026 The BiRB Authors
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

#include "birb/frame_engine.hpp"

#include <algorithm>
#include <cmath>

#include "birb/errors.hpp"

namespace birb {

namespace {

uint64_t local_index(const PauliOperator &p, const std::vector<size_t> &qubits) {
    uint64_t l = 0;
    for (size_t j = 0; j < qubits.size(); j++) {
        l |= uint64_t(static_cast<uint8_t>(p.get(qubits[j]))) << (2 * j);
    }
    return l;
}

double bitflip_probability(const SpamChannel &c) {
    return (1 - std::exp(-2 * c.p_m)) / 2;
}

void check_spam(const SpamChannel &c) {
    if (c.kind == SpamKind::AmplitudeDamping && c.p_m > 0) {
        throw DomainError("frame engine: amplitude damping SPAM is not a Pauli channel; use the dense engine");
    }
}

void add_gate_events(FramePlan &plan, const GateLayer &layer, const NoiseModel &noise, const PauliOperator &s) {
    for (const auto &g : layer.gates()) {
        const GateNoiseEntry *e = noise.gate_error(g.gate.noise_key(), g.qubits);
        if (!e) {
            continue;
        }
        if (!e->stochastic) {
            throw DomainError("frame engine: gate " + e->gate + " has non-stochastic error generators");
        }
        if (e->distribution[0] >= 1.0) {
            continue;
        }
        uint64_t target = local_index(s, g.qubits);
        FramePlan::Event ev;
        ev.cdf = &e->cdf;
        ev.flips.resize(e->cdf.size());
        for (uint64_t a = 0; a < ev.flips.size(); a++) {
            ev.flips[a] = indices_anticommute(a, target);
        }
        plan.events.push_back(std::move(ev));
    }
}

}  // namespace

double FramePlan::expectation() const {
    double value = std::pow(gamma, static_cast<double>(depolarizing_layers));
    for (const auto &ev : events) {
        double flip = 0, prev = 0;
        for (size_t a = 0; a < ev.flips.size(); a++) {
            double pa = (*ev.cdf)[a] - prev;
            prev = (*ev.cdf)[a];
            if (ev.flips[a]) {
                flip += pa;
            }
        }
        value *= 1 - 2 * flip;
    }
    for (double q : spam_flips) {
        value *= 1 - 2 * q;
    }
    return value;
}

FramePlan frame_prepare(const BirbCircuit &bc, const NoiseModel &noise) {
    size_t n = bc.num_qubits();
    if (noise.num_qubits() != n) {
        throw DimensionError("noise model and circuit qubit counts differ");
    }
    FramePlan plan;
    plan.gamma = noise.layer_depolarizing();
    size_t depth = bc.circuit.depth();
    // After the prep layer the state is stabilized by `initial`; a Pauli
    // error flips the value iff it anticommutes with the propagated target.
    PauliOperator s = bc.initial;
    for (size_t k = 0; k < depth; k++) {
        const GateLayer &layer = bc.circuit.layer(k);
        if (k > 0) {
            layer.conjugate_inplace(s);
        }
        add_gate_events(plan, layer, noise, s);
        if (k == 0) {
            for (size_t q = 0; q < n; q++) {
                const SpamChannel &c = noise.prep(q);
                check_spam(c);
                if (c.kind == SpamKind::Bitflip && c.p_m > 0 && s.z(q)) {
                    plan.spam_flips.push_back(bitflip_probability(c));
                }
            }
        } else if (k + 1 < depth) {
            if (plan.gamma < 1.0) {
                plan.depolarizing_layers++;
            }
        } else {
            for (size_t q = 0; q < n; q++) {
                const SpamChannel &c = noise.measurement(q);
                check_spam(c);
                if (c.kind == SpamKind::Bitflip && c.p_m > 0 && s.z(q)) {
                    plan.spam_flips.push_back(bitflip_probability(c));
                }
            }
        }
    }
    return plan;
}

int64_t frame_run_sum(const FramePlan &plan, uint64_t shots, Rng &rng) {
    int64_t sum = 0;
    double reset = 1 - plan.gamma;
    for (uint64_t shot = 0; shot < shots; shot++) {
        bool flip = false;
        for (const auto &ev : plan.events) {
            double u = uniform01(rng);
            size_t a = std::upper_bound(ev.cdf->begin(), ev.cdf->end(), u) - ev.cdf->begin();
            if (a >= ev.flips.size()) {
                a = ev.flips.size() - 1;
            }
            flip ^= ev.flips[a] != 0;
        }
        // A uniformly random n-qubit Pauli (identity included) anticommutes
        // with a fixed non-identity Pauli with probability exactly 1/2.
        for (size_t k = 0; k < plan.depolarizing_layers; k++) {
            if (uniform01(rng) < reset && coin(rng)) {
                flip = !flip;
            }
        }
        for (double q : plan.spam_flips) {
            if (uniform01(rng) < q) {
                flip = !flip;
            }
        }
        sum += flip ? -1 : 1;
    }
    return sum;
}

std::vector<int> frame_run(const BirbCircuit &bc, const NoiseModel &noise, uint64_t shots, Rng &rng) {
    FramePlan plan = frame_prepare(bc, noise);
    std::vector<int> out;
    out.reserve(shots);
    for (uint64_t shot = 0; shot < shots; shot++) {
        out.push_back(static_cast<int>(frame_run_sum(plan, 1, rng)));
    }
    return out;
}

}  // namespace birb
