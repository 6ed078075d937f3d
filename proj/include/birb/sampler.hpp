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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "birb/circuit.hpp"
#include "birb/rng.hpp"

namespace birb {

/// Layer distribution: edgegrab placement of two-qubit gates with expected
/// density `xi`, uniform single-qubit gates everywhere else.
struct OmegaSpec {
    size_t num_qubits = 0;
    GateSetSpec gate_set;
    double xi = 0.25;

    /// Throws ConfigError on an invalid configuration. Returns a warning
    /// string (possibly empty) when xi * n / 2 exceeds the largest matching.
    std::string validate() const;

    /// The gate set used for the simulations: SX, SY, I and CNOT on an
    /// all-to-all graph.
    static OmegaSpec standard(size_t num_qubits, double xi);
};

/// A BiRB circuit: layer 0 prepares a stabilizer state of `initial`,
/// layers 1..d are the core, the last layer rotates the evolved Pauli into
/// a Z/I product `target`.
struct BirbCircuit {
    Circuit circuit;
    size_t benchmark_depth = 0;
    PauliOperator initial;
    PauliOperator target;

    size_t num_qubits() const {
        return circuit.num_qubits();
    }
    /// Support of the target (its z bits).
    const std::vector<uint64_t> &z_mask() const {
        return target.z_words();
    }
    /// sign(target) * (-1)^{|b & z_mask|} for a measured bit string (bit q = qubit q).
    int value(std::span<const uint64_t> bits) const;
    /// The benchmark (core) layers only.
    Circuit core() const;
};

GateLayer sample_omega_layer(const OmegaSpec &spec, Rng &rng);

/// Single-qubit layer whose output on |0...0> is a uniformly random tensor
/// product stabilizer state stabilized by s, sign included.
GateLayer prep_layer(const PauliOperator &s, Rng &rng);

/// Gate preparing the +1 eigenstate of sign * p from |0>, from a fixed table.
CliffordGate prep_gate(Pauli1 p, bool negative);

/// H on X, HSDG on Y, I on I or Z.
GateLayer measurement_layer(const PauliOperator &s_prime);

BirbCircuit build_birb_circuit(size_t num_qubits, size_t depth, const OmegaSpec &spec, Rng &rng);

constexpr size_t kDefaultCliffordCap = 8;

/// Uniformly random n-qubit Clifford (symplectic part and signs).
CliffordTableau sample_uniform_clifford(size_t num_qubits, Rng &rng, size_t cap = kDefaultCliffordCap);

/// C_0 .. C_d uniform Cliffords as full-width tableau layers, a uniformly
/// random non-identity stabilizer of C_0|0>, and a final basis-change layer.
BirbCircuit build_clifford_group_birb_circuit(
    size_t num_qubits, size_t depth, Rng &rng, size_t cap = kDefaultCliffordCap);

struct ScramblingPair {
    PauliOperator p;
    PauliOperator p_prime;
    double estimate = 0;
};

struct ScramblingReport {
    size_t k = 0;
    double delta_hat = 0;
    size_t circuits = 0;
    size_t probes = 0;
    std::vector<ScramblingPair> pairs;
};

/// Monte Carlo estimate of the scrambling quantity
/// (1/4^n) E Tr(P' U P U^-1) for k-layer circuits. `n_pauli_pairs == 0`
/// enumerates all pairs and `n_probes == 0` sums exhaustively over probes.
ScramblingReport estimate_scrambling(
    const OmegaSpec &spec, size_t k, size_t n_pauli_pairs, size_t n_circuits, size_t n_probes, Rng &rng);

enum class BirbVariant { Standard, CliffordGroup };

std::string variant_name(BirbVariant v);
BirbVariant parse_variant(const std::string &name);

struct ExperimentDesign {
    size_t num_qubits = 0;
    std::vector<size_t> depths;
    size_t circuits_per_depth = 0;
    OmegaSpec omega;
    uint64_t seed = 0;
    BirbVariant variant = BirbVariant::Standard;
};

struct DesignedCircuit {
    uint64_t id = 0;
    BirbCircuit circuit;
};

/// Builds K circuits per depth. Circuit (depth, k) draws from its own
/// substream, so the batch is independent of generation order.
std::vector<DesignedCircuit> generate_design(const ExperimentDesign &design);

/// Binary RB depth schedule {0, 1, 2, 4, ..., 2^max_exponent}.
std::vector<size_t> power_of_two_depths(size_t max_exponent, bool include_one = true);

}  // namespace birb
