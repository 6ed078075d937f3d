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
#include <string>
#include <string_view>
#include <vector>

#include "birb/rng.hpp"

namespace birb {

/// Single-qubit Pauli letter. The numeric value is the per-qubit digit used
/// by the Pauli-basis index (see `PauliOperator::index`).
enum class Pauli1 : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// A signed n-qubit Pauli operator in symplectic form.
///
/// The operator is `i^phase * (sigma_0 ⊗ sigma_1 ⊗ ...)` where sigma_q is
/// I, X, Z or Y for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1). With this
/// convention Hermitian operators have phase 0 (+) or 2 (-).
///
/// Bits are packed 64 per word; unused high bits of the last word are zero.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits);

    static PauliOperator identity(size_t num_qubits) {
        return PauliOperator(num_qubits);
    }
    static PauliOperator single(size_t num_qubits, size_t qubit, Pauli1 p);

    /// Parses "+XIZY" / "-XX" (a leading '−' is also accepted). The sign is required.
    static PauliOperator from_str(std::string_view text);
    std::string str() const;

    /// Pauli-basis index for small n: sum over qubits of digit(q) * 4^q with
    /// digit I=0, X=1, Y=2, Z=3. Sign is dropped.
    static PauliOperator from_index(size_t num_qubits, uint64_t index);
    uint64_t index() const;

    size_t num_qubits() const {
        return n_;
    }
    size_t num_words() const {
        return xs_.size();
    }

    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    Pauli1 get(size_t q) const;
    void set(size_t q, Pauli1 p);
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);

    uint8_t phase() const {
        return phase_;
    }
    void set_phase(unsigned k) {
        phase_ = static_cast<uint8_t>(k & 3);
    }
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    /// +1 or -1 for Hermitian operators.
    int sign() const;
    bool is_identity_up_to_phase() const;
    bool is_identity() const {
        return phase_ == 0 && is_identity_up_to_phase();
    }
    /// True when x_bits == 0 (only I and Z factors).
    bool is_z_type() const;
    size_t weight() const;
    /// Same Pauli letters with phase 0.
    PauliOperator unsigned_part() const;
    PauliOperator negated() const;

    const std::vector<uint64_t> &x_words() const {
        return xs_;
    }
    const std::vector<uint64_t> &z_words() const {
        return zs_;
    }
    std::vector<uint64_t> &x_words() {
        return xs_;
    }
    std::vector<uint64_t> &z_words() {
        return zs_;
    }

    /// In-place right multiplication: *this = *this * rhs.
    PauliOperator &operator*=(const PauliOperator &rhs);

    bool operator==(const PauliOperator &other) const = default;

   private:
    size_t n_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    uint8_t phase_ = 0;
};

/// Group product a * b with exact phase tracking.
PauliOperator multiply(const PauliOperator &a, const PauliOperator &b);

/// True iff the symplectic form x_a.z_b + z_a.x_b vanishes mod 2.
bool commutes(const PauliOperator &a, const PauliOperator &b);

/// Uniform over the 4^n - 1 non-identity unsigned Paulis, returned with + sign.
/// Signed sampling is unnecessary: Tr(s E[s]) is invariant under s -> -s.
PauliOperator sample_random_pauli(size_t num_qubits, Rng &rng);

/// Uniform over all 4^n unsigned Paulis including the identity.
PauliOperator sample_any_pauli(size_t num_qubits, Rng &rng);

char pauli_char(Pauli1 p);

/// Parity of the symplectic inner product of two small-n Pauli indices.
inline bool indices_anticommute(uint64_t a, uint64_t b) {
    // digit I=0,X=1,Y=2,Z=3 -> x = (d==1||d==2), z = (d>=2)
    uint64_t ax = 0, az = 0, bx = 0, bz = 0;
    for (int s = 0; a | b; s++, a >>= 2, b >>= 2) {
        uint64_t da = a & 3, db = b & 3;
        ax |= uint64_t(da == 1 || da == 2) << s;
        az |= uint64_t(da >= 2) << s;
        bx |= uint64_t(db == 1 || db == 2) << s;
        bz |= uint64_t(db >= 2) << s;
    }
    return (__builtin_popcountll(ax & bz) + __builtin_popcountll(az & bx)) & 1;
}

}  // namespace birb
