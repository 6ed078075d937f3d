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

#include "birb/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "birb/errors.hpp"

namespace birb {

std::string OmegaSpec::validate() const {
    if (num_qubits == 0) {
        throw ConfigError("omega: n must be >= 1");
    }
    if (!(xi >= 0 && xi <= 1)) {
        throw ConfigError("omega.xi: must lie in [0, 1]");
    }
    gate_set.validate(num_qubits);
    if (xi > 0 && gate_set.connectivity.empty()) {
        throw ConfigError("omega.xi > 0 requires a non-empty gate_set.connectivity");
    }
    // Greedy matching in edge order is a lower bound on the maximum; report
    // when even the trivial upper bound n/2 cannot host the requested density.
    double wanted = xi * static_cast<double>(num_qubits) / 2;
    std::vector<bool> used(num_qubits, false);
    size_t greedy = 0;
    for (auto [a, b] : gate_set.connectivity) {
        if (!used[a] && !used[b]) {
            used[a] = used[b] = true;
            greedy++;
        }
    }
    if (wanted > static_cast<double>(greedy)) {
        return "omega: xi*n/2 = " + std::to_string(wanted) + " exceeds matching size " + std::to_string(greedy) +
               "; realized density will be lower than xi";
    }
    return "";
}

OmegaSpec OmegaSpec::standard(size_t num_qubits, double xi) {
    OmegaSpec spec;
    spec.num_qubits = num_qubits;
    spec.xi = xi;
    spec.gate_set.single_qubit_gates = {"SX", "SY", "I"};
    spec.gate_set.two_qubit_gate = "CNOT";
    spec.gate_set.connectivity = GateSetSpec::all_to_all(num_qubits);
    return spec;
}

int BirbCircuit::value(std::span<const uint64_t> bits) const {
    const auto &mask = target.z_words();
    unsigned parity = 0;
    for (size_t w = 0; w < mask.size() && w < bits.size(); w++) {
        parity += std::popcount(mask[w] & bits[w]);
    }
    int v = (parity & 1) ? -1 : +1;
    return target.sign() * v;
}

Circuit BirbCircuit::core() const {
    Circuit c(circuit.num_qubits());
    for (size_t k = 1; k + 1 < circuit.depth(); k++) {
        c.append(circuit.layer(k));
    }
    return c;
}

GateLayer sample_omega_layer(const OmegaSpec &spec, Rng &rng) {
    size_t n = spec.num_qubits;
    if (spec.xi > 0 && spec.gate_set.connectivity.empty()) {
        throw ConfigError("omega.xi > 0 requires a non-empty gate_set.connectivity");
    }
    GateLayer layer(n);
    std::vector<bool> used(n, false);
    if (spec.xi > 0) {
        std::vector<std::pair<size_t, size_t>> edges = spec.gate_set.connectivity;
        std::shuffle(edges.begin(), edges.end(), rng);
        std::vector<std::pair<size_t, size_t>> matching;
        for (auto [a, b] : edges) {
            if (!used[a] && !used[b]) {
                used[a] = used[b] = true;
                matching.emplace_back(a, b);
            }
        }
        std::fill(used.begin(), used.end(), false);
        double keep = std::min(1.0, static_cast<double>(n) * spec.xi / (2.0 * static_cast<double>(matching.size())));
        CliffordGate two = CliffordGate::from_name(spec.gate_set.two_qubit_gate);
        for (auto [a, b] : matching) {
            if (uniform01(rng) < keep) {
                if (coin(rng)) {
                    std::swap(a, b);
                }
                used[a] = used[b] = true;
                layer.add(two, {a, b});
            }
        }
    }
    const auto &names = spec.gate_set.single_qubit_gates;
    if (!names.empty()) {
        std::vector<CliffordGate> singles;
        for (const auto &name : names) {
            singles.push_back(CliffordGate::from_name(name));
        }
        for (size_t q = 0; q < n; q++) {
            if (!used[q]) {
                layer.add(singles[uniform_below(rng, singles.size())], {q});
            }
        }
    }
    return layer;
}

CliffordGate prep_gate(Pauli1 p, bool negative) {
    // Canonical C1 indices whose Z image is the requested signed Pauli.
    switch (p) {
        case Pauli1::X:
            return CliffordGate::c1(negative ? 17 : 16);
        case Pauli1::Y:
            return CliffordGate::c1(negative ? 5 : 4);
        case Pauli1::Z:
            return CliffordGate::c1(negative ? 1 : 0);
        default:
            throw DomainError("no stabilizer state is a +1 eigenstate of the identity alone");
    }
}

GateLayer prep_layer(const PauliOperator &s, Rng &rng) {
    if (s.is_identity_up_to_phase()) {
        throw DomainError("prep_layer: s must not be the identity");
    }
    if (!s.is_hermitian()) {
        throw DomainError("prep_layer: s must be Hermitian, got " + s.str());
    }
    size_t n = s.num_qubits();
    std::vector<size_t> support;
    for (size_t q = 0; q < n; q++) {
        if (s.get(q) != Pauli1::I) {
            support.push_back(q);
        }
    }
    // Eigenvalue signs on the support are uniform subject to their product being sign(s).
    std::vector<bool> negative(n, false);
    bool parity = s.sign() < 0;
    for (size_t k = 0; k + 1 < support.size(); k++) {
        negative[support[k]] = coin(rng);
        parity ^= negative[support[k]];
    }
    negative[support.back()] = parity;

    GateLayer layer(n);
    for (size_t q = 0; q < n; q++) {
        Pauli1 p = s.get(q);
        if (p == Pauli1::I) {
            uint64_t state = uniform_below(rng, 6);
            layer.add(prep_gate(static_cast<Pauli1>(1 + state / 2), state % 2 == 1), {q});
        } else {
            layer.add(prep_gate(p, negative[q]), {q});
        }
    }
    return layer;
}

GateLayer measurement_layer(const PauliOperator &s_prime) {
    if (!s_prime.is_hermitian()) {
        throw DomainError("measurement_layer: s' must be Hermitian");
    }
    size_t n = s_prime.num_qubits();
    GateLayer layer(n);
    for (size_t q = 0; q < n; q++) {
        switch (s_prime.get(q)) {
            case Pauli1::X:
                layer.add(CliffordGate(GateKind::H), {q});
                break;
            case Pauli1::Y:
                layer.add(CliffordGate(GateKind::HSDG), {q});
                break;
            default:
                layer.add(CliffordGate(GateKind::I), {q});
                break;
        }
    }
    return layer;
}

BirbCircuit build_birb_circuit(size_t num_qubits, size_t depth, const OmegaSpec &spec, Rng &rng) {
    if (spec.num_qubits != num_qubits) {
        throw DimensionError("omega spec is for a different qubit count");
    }
    BirbCircuit bc;
    bc.benchmark_depth = depth;
    // Random sign on s randomizes the ideal outcome bit string.
    bc.initial = sample_random_pauli(num_qubits, rng);
    if (coin(rng)) {
        bc.initial = bc.initial.negated();
    }
    bc.circuit = Circuit(num_qubits);
    bc.circuit.append(prep_layer(bc.initial, rng));
    PauliOperator evolved = bc.initial;
    for (size_t k = 0; k < depth; k++) {
        GateLayer layer = sample_omega_layer(spec, rng);
        layer.conjugate_inplace(evolved);
        bc.circuit.append(std::move(layer));
    }
    GateLayer last = measurement_layer(evolved);
    last.conjugate_inplace(evolved);
    bc.circuit.append(std::move(last));
    bc.target = std::move(evolved);
    return bc;
}

CliffordTableau sample_uniform_clifford(size_t num_qubits, Rng &rng, size_t cap) {
    if (num_qubits == 0) {
        throw DomainError("sample_uniform_clifford requires n >= 1");
    }
    if (num_qubits > cap) {
        throw CapabilityError(
            "uniform Clifford sampling is capped at n=" + std::to_string(cap) + ", requested " +
            std::to_string(num_qubits));
    }
    size_t n = num_qubits;
    std::vector<PauliOperator> xs, zs;
    // Project a uniform vector onto the symplectic complement of the pairs
    // chosen so far. The projection is linear and surjective, so its image
    // is uniform on the complement.
    auto project = [&](PauliOperator v) {
        v.set_phase(0);
        for (size_t j = 0; j < xs.size(); j++) {
            bool with_z = !commutes(v, zs[j]);
            bool with_x = !commutes(v, xs[j]);
            if (with_z) {
                v *= xs[j];
            }
            if (with_x) {
                v *= zs[j];
            }
        }
        v.set_phase(0);
        return v;
    };
    for (size_t i = 0; i < n; i++) {
        PauliOperator x_img;
        do {
            x_img = project(sample_any_pauli(n, rng));
        } while (x_img.is_identity_up_to_phase());
        PauliOperator z_img;
        do {
            z_img = project(sample_any_pauli(n, rng));
        } while (commutes(z_img, x_img));
        xs.push_back(std::move(x_img));
        zs.push_back(std::move(z_img));
    }
    // Letters are Hermitian at phase 0; random signs complete the group element.
    for (size_t i = 0; i < n; i++) {
        xs[i].set_phase(coin(rng) ? 2 : 0);
        zs[i].set_phase(coin(rng) ? 2 : 0);
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

BirbCircuit build_clifford_group_birb_circuit(size_t num_qubits, size_t depth, Rng &rng, size_t cap) {
    std::vector<size_t> all(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        all[q] = q;
    }
    BirbCircuit bc;
    bc.benchmark_depth = depth;
    bc.circuit = Circuit(num_qubits);

    CliffordTableau c0 = sample_uniform_clifford(num_qubits, rng, cap);
    PauliOperator s(num_qubits);
    while (s.is_identity_up_to_phase()) {
        s = PauliOperator(num_qubits);
        for (size_t q = 0; q < num_qubits; q++) {
            if (coin(rng)) {
                s *= c0.z_image(q);
            }
        }
    }
    GateLayer first(num_qubits);
    first.add(CliffordGate::tableau(std::move(c0)), all);
    bc.circuit.append(std::move(first));
    bc.initial = s;

    PauliOperator evolved = s;
    for (size_t k = 0; k < depth; k++) {
        GateLayer layer(num_qubits);
        layer.add(CliffordGate::tableau(sample_uniform_clifford(num_qubits, rng, cap)), all);
        layer.conjugate_inplace(evolved);
        bc.circuit.append(std::move(layer));
    }
    GateLayer last = measurement_layer(evolved);
    last.conjugate_inplace(evolved);
    bc.circuit.append(std::move(last));
    bc.target = std::move(evolved);
    return bc;
}

ScramblingReport estimate_scrambling(
    const OmegaSpec &spec, size_t k, size_t n_pauli_pairs, size_t n_circuits, size_t n_probes, Rng &rng) {
    size_t n = spec.num_qubits;
    if (n_circuits == 0) {
        throw DomainError("estimate_scrambling: need at least one circuit");
    }
    std::vector<std::pair<PauliOperator, PauliOperator>> pairs;
    if (n_pauli_pairs == 0) {
        if (n > 4) {
            throw CapabilityError("exhaustive Pauli pairs only for n <= 4");
        }
        uint64_t count = uint64_t{1} << (2 * n);
        for (uint64_t a = 1; a < count; a++) {
            for (uint64_t b = 1; b < count; b++) {
                pairs.emplace_back(PauliOperator::from_index(n, a), PauliOperator::from_index(n, b));
            }
        }
    } else {
        for (size_t j = 0; j < n_pauli_pairs; j++) {
            PauliOperator a = sample_random_pauli(n, rng);
            PauliOperator b = sample_random_pauli(n, rng);
            pairs.emplace_back(std::move(a), std::move(b));
        }
    }
    std::vector<PauliOperator> probes;
    if (n_probes == 0) {
        if (n > 6) {
            throw CapabilityError("exhaustive probes only for n <= 6");
        }
        for (uint64_t r = 0; r < (uint64_t{1} << (2 * n)); r++) {
            probes.push_back(PauliOperator::from_index(n, r));
        }
    }

    std::vector<Circuit> circuits;
    for (size_t c = 0; c < n_circuits; c++) {
        Circuit circuit(n);
        for (size_t j = 0; j < k; j++) {
            circuit.append(sample_omega_layer(spec, rng));
        }
        circuits.push_back(std::move(circuit));
    }

    ScramblingReport report;
    report.k = k;
    report.circuits = n_circuits;
    report.probes = n_probes == 0 ? probes.size() : n_probes;
    double best = -1;
    for (auto &[p, p_prime] : pairs) {
        double total = 0;
        for (const auto &circuit : circuits) {
            PauliOperator q = conjugate_by_circuit(p, circuit);
            double acc = 0;
            if (n_probes == 0) {
                for (const auto &r : probes) {
                    acc += (commutes(p_prime, r) == commutes(q, r)) ? 1 : -1;
                }
                acc /= static_cast<double>(probes.size());
            } else {
                for (size_t j = 0; j < n_probes; j++) {
                    PauliOperator r = sample_any_pauli(n, rng);
                    acc += (commutes(p_prime, r) == commutes(q, r)) ? 1 : -1;
                }
                acc /= static_cast<double>(n_probes);
            }
            total += acc;
        }
        double estimate = total / static_cast<double>(n_circuits);
        best = std::max(best, estimate);
        report.pairs.push_back(ScramblingPair{p, p_prime, estimate});
    }
    report.delta_hat = best - std::ldexp(1.0, -2 * static_cast<int>(n));
    return report;
}

std::string variant_name(BirbVariant v) {
    return v == BirbVariant::Standard ? "birb" : "clifford-group-birb";
}

BirbVariant parse_variant(const std::string &name) {
    if (name == "birb") {
        return BirbVariant::Standard;
    }
    if (name == "clifford-group-birb") {
        return BirbVariant::CliffordGroup;
    }
    throw ConfigError("variant: expected \"birb\" or \"clifford-group-birb\", got \"" + name + "\"");
}

std::vector<DesignedCircuit> generate_design(const ExperimentDesign &design) {
    if (design.variant == BirbVariant::Standard) {
        design.omega.validate();
        if (design.omega.num_qubits != design.num_qubits) {
            throw ConfigError("omega: qubit count differs from design n");
        }
    }
    std::vector<DesignedCircuit> out;
    uint64_t id = 0;
    for (size_t depth : design.depths) {
        for (size_t k = 0; k < design.circuits_per_depth; k++) {
            Rng rng = substream(design.seed, "circuit", {depth, k});
            DesignedCircuit dc;
            dc.id = id++;
            dc.circuit = design.variant == BirbVariant::Standard
                             ? build_birb_circuit(design.num_qubits, depth, design.omega, rng)
                             : build_clifford_group_birb_circuit(design.num_qubits, depth, rng);
            out.push_back(std::move(dc));
        }
    }
    return out;
}

std::vector<size_t> power_of_two_depths(size_t max_exponent, bool include_one) {
    std::vector<size_t> depths = {0};
    for (size_t j = include_one ? 0 : 1; j <= max_exponent; j++) {
        depths.push_back(size_t{1} << j);
    }
    return depths;
}

}  // namespace birb
