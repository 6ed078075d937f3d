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

#include "birb/pauli.hpp"

#include <bit>

#include "birb/errors.hpp"

namespace birb {

namespace {

size_t words_for(size_t n) {
    return (n + 63) / 64;
}

void check_same_size(const PauliOperator &a, const PauliOperator &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError(
            "Pauli qubit counts differ: " + std::to_string(a.num_qubits()) + " vs " +
            std::to_string(b.num_qubits()));
    }
}

void mask_tail(std::vector<uint64_t> &words, size_t n) {
    if (n % 64 != 0 && !words.empty()) {
        words.back() &= (uint64_t{1} << (n % 64)) - 1;
    }
}

}  // namespace

PauliOperator::PauliOperator(size_t num_qubits)
    : n_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t qubit, Pauli1 p) {
    PauliOperator result(num_qubits);
    result.set(qubit, p);
    return result;
}

char pauli_char(Pauli1 p) {
    return "IXYZ"[static_cast<int>(p)];
}

Pauli1 PauliOperator::get(size_t q) const {
    bool bx = x(q), bz = z(q);
    if (bx) {
        return bz ? Pauli1::Y : Pauli1::X;
    }
    return bz ? Pauli1::Z : Pauli1::I;
}

void PauliOperator::set_x(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    xs_[q >> 6] = v ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
}

void PauliOperator::set_z(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    zs_[q >> 6] = v ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

void PauliOperator::set(size_t q, Pauli1 p) {
    if (q >= n_) {
        throw DomainError("qubit index " + std::to_string(q) + " out of range for n=" + std::to_string(n_));
    }
    set_x(q, p == Pauli1::X || p == Pauli1::Y);
    set_z(q, p == Pauli1::Z || p == Pauli1::Y);
}

PauliOperator PauliOperator::from_str(std::string_view text) {
    size_t offset;
    bool negative;
    if (text.starts_with("+")) {
        offset = 1;
        negative = false;
    } else if (text.starts_with("-")) {
        offset = 1;
        negative = true;
    } else if (text.starts_with("−")) {
        offset = 3;
        negative = true;
    } else {
        throw ParseError("Pauli text must start with '+' or '-': '" + std::string(text) + "'", 1, 1);
    }
    PauliOperator result(text.size() - offset);
    for (size_t k = offset; k < text.size(); k++) {
        Pauli1 p;
        switch (text[k]) {
            case 'I':
            case '_':
                p = Pauli1::I;
                break;
            case 'X':
                p = Pauli1::X;
                break;
            case 'Y':
                p = Pauli1::Y;
                break;
            case 'Z':
                p = Pauli1::Z;
                break;
            default:
                throw ParseError(
                    "unexpected character '" + std::string(1, text[k]) + "' in Pauli text", 1, k + 1);
        }
        result.set(k - offset, p);
    }
    result.phase_ = negative ? 2 : 0;
    return result;
}

std::string PauliOperator::str() const {
    std::string out;
    out.reserve(n_ + 2);
    switch (phase_) {
        case 0:
            out += '+';
            break;
        case 1:
            out += "+i";
            break;
        case 2:
            out += '-';
            break;
        default:
            out += "-i";
            break;
    }
    for (size_t q = 0; q < n_; q++) {
        out += pauli_char(get(q));
    }
    return out;
}

PauliOperator PauliOperator::from_index(size_t num_qubits, uint64_t index) {
    PauliOperator result(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        result.set(q, static_cast<Pauli1>((index >> (2 * q)) & 3));
    }
    return result;
}

uint64_t PauliOperator::index() const {
    if (n_ > 32) {
        throw CapabilityError("Pauli index only defined for n <= 32");
    }
    uint64_t result = 0;
    for (size_t q = 0; q < n_; q++) {
        result |= uint64_t(static_cast<uint8_t>(get(q))) << (2 * q);
    }
    return result;
}

int PauliOperator::sign() const {
    if (!is_hermitian()) {
        throw DomainError("sign() requested for non-Hermitian Pauli " + str());
    }
    return phase_ == 0 ? +1 : -1;
}

bool PauliOperator::is_identity_up_to_phase() const {
    for (size_t k = 0; k < xs_.size(); k++) {
        if (xs_[k] | zs_[k]) {
            return false;
        }
    }
    return true;
}

bool PauliOperator::is_z_type() const {
    for (uint64_t w : xs_) {
        if (w) {
            return false;
        }
    }
    return true;
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

PauliOperator PauliOperator::unsigned_part() const {
    PauliOperator result = *this;
    result.phase_ = 0;
    return result;
}

PauliOperator PauliOperator::negated() const {
    PauliOperator result = *this;
    result.phase_ = (phase_ + 2) & 3;
    return result;
}

PauliOperator &PauliOperator::operator*=(const PauliOperator &rhs) {
    check_same_size(*this, rhs);
    // a = i^(ka + ya) X^xa Z^za, so the product picks up (-1)^|za & xb| when
    // reordering, then converts back to the letter form with i^(-y_out).
    unsigned k = phase_ + rhs.phase_;
    for (size_t w = 0; w < xs_.size(); w++) {
        uint64_t xa = xs_[w], za = zs_[w], xb = rhs.xs_[w], zb = rhs.zs_[w];
        uint64_t xo = xa ^ xb, zo = za ^ zb;
        k += std::popcount(xa & za);
        k += std::popcount(xb & zb);
        k += 2 * std::popcount(za & xb);
        k += 3 * std::popcount(xo & zo);
        xs_[w] = xo;
        zs_[w] = zo;
    }
    phase_ = k & 3;
    return *this;
}

PauliOperator multiply(const PauliOperator &a, const PauliOperator &b) {
    PauliOperator result = a;
    result *= b;
    return result;
}

bool commutes(const PauliOperator &a, const PauliOperator &b) {
    check_same_size(a, b);
    unsigned parity = 0;
    const auto &xa = a.x_words(), &za = a.z_words(), &xb = b.x_words(), &zb = b.z_words();
    for (size_t w = 0; w < xa.size(); w++) {
        parity ^= std::popcount((xa[w] & zb[w]) ^ (za[w] & xb[w]));
    }
    return (parity & 1) == 0;
}

PauliOperator sample_any_pauli(size_t num_qubits, Rng &rng) {
    PauliOperator result(num_qubits);
    for (auto &w : result.x_words()) {
        w = rng();
    }
    for (auto &w : result.z_words()) {
        w = rng();
    }
    mask_tail(result.x_words(), num_qubits);
    mask_tail(result.z_words(), num_qubits);
    return result;
}

PauliOperator sample_random_pauli(size_t num_qubits, Rng &rng) {
    if (num_qubits == 0) {
        throw DomainError("sample_random_pauli requires n >= 1");
    }
    while (true) {
        PauliOperator p = sample_any_pauli(num_qubits, rng);
        if (!p.is_identity_up_to_phase()) {
            return p;
        }
    }
}

}  // namespace birb
