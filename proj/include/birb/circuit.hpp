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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "birb/clifford.hpp"

namespace birb {

struct GateInstance {
    CliffordGate gate;
    std::vector<size_t> qubits;

    bool operator==(const GateInstance &other) const = default;
};

/// One time step of gates with pairwise disjoint supports. Qubits not
/// touched by any gate idle.
class GateLayer {
   public:
    GateLayer() = default;
    explicit GateLayer(size_t num_qubits) : n_(num_qubits) {
    }
    /// Throws DomainError on out-of-range or overlapping supports.
    GateLayer(size_t num_qubits, std::vector<GateInstance> gates);

    /// Appends a gate, enforcing disjointness against gates already present.
    void add(CliffordGate gate, std::vector<size_t> qubits);

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<GateInstance> &gates() const {
        return gates_;
    }
    bool empty() const {
        return gates_.empty();
    }

    void conjugate_inplace(PauliOperator &p) const;
    GateLayer inverse() const;

    /// "H(0);CNOT(1,2)"; idle qubits are omitted.
    std::string str() const;

    bool operator==(const GateLayer &other) const = default;

   private:
    size_t n_ = 0;
    std::vector<GateInstance> gates_;
};

/// Layers in execution order: layers()[0] acts first.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(size_t num_qubits) : n_(num_qubits) {
    }
    Circuit(size_t num_qubits, std::vector<GateLayer> layers);

    void append(GateLayer layer);

    size_t num_qubits() const {
        return n_;
    }
    size_t depth() const {
        return layers_.size();
    }
    const std::vector<GateLayer> &layers() const {
        return layers_;
    }
    const GateLayer &layer(size_t k) const {
        return layers_[k];
    }

    /// Layer-wise inverse in reversed order.
    Circuit inverse() const;

    /// Header line "n=<int>" then one line per layer, each newline-terminated.
    std::string serialize() const;
    static Circuit parse(std::string_view text);

    bool operator==(const Circuit &other) const = default;

   private:
    size_t n_ = 0;
    std::vector<GateLayer> layers_;
};

inline size_t depth(const Circuit &c) {
    return c.depth();
}
inline size_t qubit_count(const Circuit &c) {
    return c.num_qubits();
}
/// c1 followed by c2.
Circuit compose(const Circuit &c1, const Circuit &c2);

PauliOperator conjugate_by_layer(const PauliOperator &p, const GateLayer &layer);
/// Conjugates p through every layer in execution order.
PauliOperator conjugate_by_circuit(const PauliOperator &p, const Circuit &c);

/// A native gate set over a coupling graph.
struct GateSetSpec {
    std::vector<std::string> single_qubit_gates;
    std::string two_qubit_gate = "CNOT";
    std::vector<std::pair<size_t, size_t>> connectivity;

    /// Throws ConfigError on unknown gates, self loops or out-of-range edges.
    void validate(size_t num_qubits) const;

    static std::vector<std::pair<size_t, size_t>> all_to_all(size_t num_qubits);
    static std::vector<std::pair<size_t, size_t>> line(size_t num_qubits);
};

}  // namespace birb
