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

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "birb/pauli.hpp"

namespace birb {

/// An n-qubit Clifford stored as the signed images of the generators
/// X_0..X_{n-1}, Z_0..Z_{n-1} under conjugation P -> U P U^dagger.
class CliffordTableau {
   public:
    CliffordTableau() = default;
    explicit CliffordTableau(size_t num_qubits);
    CliffordTableau(std::vector<PauliOperator> x_images, std::vector<PauliOperator> z_images);

    static CliffordTableau identity(size_t num_qubits) {
        return CliffordTableau(num_qubits);
    }

    size_t num_qubits() const {
        return xs_.size();
    }
    const PauliOperator &x_image(size_t q) const {
        return xs_[q];
    }
    const PauliOperator &z_image(size_t q) const {
        return zs_[q];
    }

    /// U p U^dagger.
    PauliOperator conjugate(const PauliOperator &p) const;

    /// The tableau of "apply *this, then `next`".
    CliffordTableau then(const CliffordTableau &next) const;
    CliffordTableau inverse() const;

    /// Images are Hermitian and satisfy the canonical commutation relations.
    bool is_valid() const;

    /// Comma separated signed images, X images first: "+XZ,-ZI,+ZZ,+IX".
    std::string str() const;
    static CliffordTableau from_str(std::string_view text);

    bool operator==(const CliffordTableau &other) const = default;

   private:
    std::vector<PauliOperator> xs_;
    std::vector<PauliOperator> zs_;
};

enum class GateKind : uint8_t {
    I,
    SX,    // X_{pi/2} = exp(-i pi/4 X)
    SY,    // Y_{pi/2} = exp(-i pi/4 Y)
    H,
    S,
    SDG,
    HSDG,  // H S^dagger (S^dagger applied first)
    C1,    // one of the 24 single-qubit Cliffords by canonical index
    CNOT,  // control is the first qubit
    TABLEAU,
};

/// A Clifford gate type. Named gates carry fixed action tables; `C1` carries
/// a canonical index in [0, 24); `TABLEAU` carries an explicit k-qubit tableau.
class CliffordGate {
   public:
    CliffordGate() = default;
    explicit CliffordGate(GateKind kind);
    static CliffordGate c1(unsigned index);
    static CliffordGate tableau(CliffordTableau t);

    /// Accepts I, SX, SY, H, S, SDG, HSDG, CNOT, C1_<k> and TABLEAU[<tableau text>].
    static CliffordGate from_name(std::string_view name);

    GateKind kind() const {
        return kind_;
    }
    unsigned c1_index() const {
        return c1_index_;
    }
    size_t arity() const;
    /// Serialized name, e.g. "H", "C1_7", "TABLEAU[+Z,+X]".
    std::string name() const;
    /// Name under which noise is attached; all tableau gates share "TABLEAU".
    std::string noise_key() const;

    /// Signed images of the local generators.
    const CliffordTableau &local_tableau() const;
    CliffordGate inverse() const;

    bool operator==(const CliffordGate &other) const;

   private:
    GateKind kind_ = GateKind::I;
    uint8_t c1_index_ = 0;
    std::shared_ptr<const CliffordTableau> tableau_;
};

/// Canonical table of the 24 single-qubit Cliffords. Entry k maps
/// X -> sx * PX and Z -> sz * PZ where (PX, PZ) runs over the ordered
/// anticommuting pairs (X,Z),(X,Y),(Y,X),(Y,Z),(Z,X),(Z,Y) and (sx, sz) over
/// (+,+),(+,-),(-,+),(-,-); k = 4 * pair + signs. C1_0 is the identity.
const CliffordTableau &single_qubit_clifford(unsigned index);

/// Canonical index of a single-qubit tableau.
unsigned single_qubit_clifford_index(const CliffordTableau &t);

/// U_g p U_g^dagger, where g acts on `qubits` (count must equal arity).
PauliOperator conjugate_by_gate(const PauliOperator &p, const CliffordGate &g, std::span<const size_t> qubits);

/// In-place variant used on hot paths.
void conjugate_by_gate_inplace(PauliOperator &p, const CliffordGate &g, std::span<const size_t> qubits);

/// Checks distinct, in-range qubit indices of the right count.
void validate_gate_qubits(const CliffordGate &g, std::span<const size_t> qubits, size_t num_qubits);

}  // namespace birb
