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

#include "birb/clifford.hpp"

#include <array>
#include <charconv>

#include "birb/errors.hpp"

namespace birb {

CliffordTableau::CliffordTableau(size_t num_qubits) {
    for (size_t q = 0; q < num_qubits; q++) {
        xs_.push_back(PauliOperator::single(num_qubits, q, Pauli1::X));
        zs_.push_back(PauliOperator::single(num_qubits, q, Pauli1::Z));
    }
}

CliffordTableau::CliffordTableau(std::vector<PauliOperator> x_images, std::vector<PauliOperator> z_images)
    : xs_(std::move(x_images)), zs_(std::move(z_images)) {
    if (xs_.size() != zs_.size()) {
        throw DimensionError("tableau needs as many X images as Z images");
    }
    for (size_t q = 0; q < xs_.size(); q++) {
        if (xs_[q].num_qubits() != xs_.size() || zs_[q].num_qubits() != xs_.size()) {
            throw DimensionError("tableau image has wrong qubit count");
        }
    }
}

PauliOperator CliffordTableau::conjugate(const PauliOperator &p) const {
    size_t n = num_qubits();
    if (p.num_qubits() != n) {
        throw DimensionError(
            "cannot conjugate " + std::to_string(p.num_qubits()) + "-qubit Pauli by " + std::to_string(n) +
            "-qubit tableau");
    }
    // p = i^(phase + #Y) prod_q X_q^x Z_q^z; conjugation maps each factor to its image.
    PauliOperator result(n);
    unsigned k = p.phase();
    for (size_t q = 0; q < n; q++) {
        bool bx = p.x(q), bz = p.z(q);
        if (bx && bz) {
            k += 1;
        }
        if (bx) {
            result *= xs_[q];
        }
        if (bz) {
            result *= zs_[q];
        }
    }
    result.set_phase(result.phase() + k);
    return result;
}

CliffordTableau CliffordTableau::then(const CliffordTableau &next) const {
    if (next.num_qubits() != num_qubits()) {
        throw DimensionError("tableau composition with mismatched qubit counts");
    }
    std::vector<PauliOperator> xs, zs;
    for (size_t q = 0; q < num_qubits(); q++) {
        xs.push_back(next.conjugate(xs_[q]));
        zs.push_back(next.conjugate(zs_[q]));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

CliffordTableau CliffordTableau::inverse() const {
    size_t n = num_qubits();
    // Expand each generator in the symplectic basis formed by the images:
    // v = sum_i <v, z'_i> x'_i + <v, x'_i> z'_i.
    auto preimage = [&](size_t j, bool want_x) {
        PauliOperator q(n);
        for (size_t i = 0; i < n; i++) {
            if (want_x) {
                q.set_x(i, zs_[i].z(j));
                q.set_z(i, xs_[i].z(j));
            } else {
                q.set_x(i, zs_[i].x(j));
                q.set_z(i, xs_[i].x(j));
            }
        }
        PauliOperator image = conjugate(q);
        if (image.phase() == 2) {
            q.set_phase(2);
        }
        return q;
    };
    std::vector<PauliOperator> xs, zs;
    for (size_t j = 0; j < n; j++) {
        xs.push_back(preimage(j, true));
        zs.push_back(preimage(j, false));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

bool CliffordTableau::is_valid() const {
    size_t n = num_qubits();
    for (size_t i = 0; i < n; i++) {
        if (!xs_[i].is_hermitian() || !zs_[i].is_hermitian()) {
            return false;
        }
        if (xs_[i].is_identity_up_to_phase() || zs_[i].is_identity_up_to_phase()) {
            return false;
        }
        for (size_t j = 0; j < n; j++) {
            if (!commutes(xs_[i], xs_[j]) || !commutes(zs_[i], zs_[j])) {
                return false;
            }
            if (commutes(xs_[i], zs_[j]) != (i != j)) {
                return false;
            }
        }
    }
    return true;
}

std::string CliffordTableau::str() const {
    std::string out;
    for (const auto *images : {&xs_, &zs_}) {
        for (const auto &p : *images) {
            if (!out.empty()) {
                out += ',';
            }
            out += p.str();
        }
    }
    return out;
}

CliffordTableau CliffordTableau::from_str(std::string_view text) {
    std::vector<PauliOperator> all;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        all.push_back(PauliOperator::from_str(text.substr(start, end - start)));
        start = end + 1;
    }
    if (all.size() % 2 != 0) {
        throw ParseError("tableau text needs 2n images", 1, 1);
    }
    size_t n = all.size() / 2;
    std::vector<PauliOperator> xs(all.begin(), all.begin() + n);
    std::vector<PauliOperator> zs(all.begin() + n, all.end());
    CliffordTableau t(std::move(xs), std::move(zs));
    if (!t.is_valid()) {
        throw ParseError("tableau images violate the Pauli commutation relations", 1, 1);
    }
    return t;
}

namespace {

CliffordTableau one_qubit(std::string_view x_image, std::string_view z_image) {
    return CliffordTableau({PauliOperator::from_str(x_image)}, {PauliOperator::from_str(z_image)});
}

const std::array<CliffordTableau, 24> &c1_table() {
    static const std::array<CliffordTableau, 24> table = [] {
        std::array<CliffordTableau, 24> t;
        const char *pairs[6][2] = {{"X", "Z"}, {"X", "Y"}, {"Y", "X"}, {"Y", "Z"}, {"Z", "X"}, {"Z", "Y"}};
        const char *signs[4][2] = {{"+", "+"}, {"+", "-"}, {"-", "+"}, {"-", "-"}};
        for (int p = 0; p < 6; p++) {
            for (int s = 0; s < 4; s++) {
                t[4 * p + s] = one_qubit(
                    std::string(signs[s][0]) + pairs[p][0], std::string(signs[s][1]) + pairs[p][1]);
            }
        }
        return t;
    }();
    return table;
}

/// Fast conjugation table over local Pauli indices.
struct LocalTable {
    std::vector<uint16_t> image;
    std::vector<uint8_t> phase;
};

LocalTable build_local_table(const CliffordTableau &t) {
    size_t k = t.num_qubits();
    LocalTable table;
    for (uint64_t a = 0; a < (uint64_t{1} << (2 * k)); a++) {
        PauliOperator img = t.conjugate(PauliOperator::from_index(k, a));
        table.image.push_back(static_cast<uint16_t>(img.index()));
        table.phase.push_back(img.phase());
    }
    return table;
}

const CliffordTableau &named_tableau(GateKind kind) {
    static const CliffordTableau i = one_qubit("+X", "+Z");
    static const CliffordTableau sx = one_qubit("+X", "-Y");
    static const CliffordTableau sy = one_qubit("-Z", "+X");
    static const CliffordTableau h = one_qubit("+Z", "+X");
    static const CliffordTableau s = one_qubit("+Y", "+Z");
    static const CliffordTableau sdg = one_qubit("-Y", "+Z");
    static const CliffordTableau hsdg = one_qubit("+Y", "+X");
    static const CliffordTableau cnot(
        {PauliOperator::from_str("+XX"), PauliOperator::from_str("+IX")},
        {PauliOperator::from_str("+ZI"), PauliOperator::from_str("+ZZ")});
    switch (kind) {
        case GateKind::I:
            return i;
        case GateKind::SX:
            return sx;
        case GateKind::SY:
            return sy;
        case GateKind::H:
            return h;
        case GateKind::S:
            return s;
        case GateKind::SDG:
            return sdg;
        case GateKind::HSDG:
            return hsdg;
        case GateKind::CNOT:
            return cnot;
        default:
            throw DomainError("gate kind has no fixed tableau");
    }
}

constexpr size_t kNumNamed = 8;

size_t named_slot(GateKind kind) {
    switch (kind) {
        case GateKind::I:
            return 0;
        case GateKind::SX:
            return 1;
        case GateKind::SY:
            return 2;
        case GateKind::H:
            return 3;
        case GateKind::S:
            return 4;
        case GateKind::SDG:
            return 5;
        case GateKind::HSDG:
            return 6;
        case GateKind::CNOT:
            return 7;
        default:
            return SIZE_MAX;
    }
}

const LocalTable *fast_table(const CliffordGate &g) {
    static const std::array<LocalTable, kNumNamed + 24> tables = [] {
        std::array<LocalTable, kNumNamed + 24> t;
        const GateKind kinds[kNumNamed] = {
            GateKind::I, GateKind::SX, GateKind::SY, GateKind::H,
            GateKind::S, GateKind::SDG, GateKind::HSDG, GateKind::CNOT};
        for (size_t k = 0; k < kNumNamed; k++) {
            t[k] = build_local_table(named_tableau(kinds[k]));
        }
        for (unsigned k = 0; k < 24; k++) {
            t[kNumNamed + k] = build_local_table(c1_table()[k]);
        }
        return t;
    }();
    if (g.kind() == GateKind::C1) {
        return &tables[kNumNamed + g.c1_index()];
    }
    size_t slot = named_slot(g.kind());
    return slot == SIZE_MAX ? nullptr : &tables[slot];
}

}  // namespace

const CliffordTableau &single_qubit_clifford(unsigned index) {
    if (index >= 24) {
        throw DomainError("single-qubit Clifford index must be < 24, got " + std::to_string(index));
    }
    return c1_table()[index];
}

unsigned single_qubit_clifford_index(const CliffordTableau &t) {
    if (t.num_qubits() != 1) {
        throw DimensionError("single_qubit_clifford_index needs a 1-qubit tableau");
    }
    for (unsigned k = 0; k < 24; k++) {
        if (c1_table()[k] == t) {
            return k;
        }
    }
    throw DomainError("not a valid single-qubit Clifford tableau: " + t.str());
}

CliffordGate::CliffordGate(GateKind kind) : kind_(kind) {
    if (kind == GateKind::C1 || kind == GateKind::TABLEAU) {
        throw DomainError("use CliffordGate::c1 / CliffordGate::tableau for parameterized gates");
    }
}

CliffordGate CliffordGate::c1(unsigned index) {
    single_qubit_clifford(index);
    CliffordGate g;
    g.kind_ = GateKind::C1;
    g.c1_index_ = static_cast<uint8_t>(index);
    return g;
}

CliffordGate CliffordGate::tableau(CliffordTableau t) {
    if (t.num_qubits() == 0 || !t.is_valid()) {
        throw DomainError("invalid tableau for tableau gate");
    }
    CliffordGate g;
    g.kind_ = GateKind::TABLEAU;
    g.tableau_ = std::make_shared<const CliffordTableau>(std::move(t));
    return g;
}

CliffordGate CliffordGate::from_name(std::string_view name) {
    static const std::pair<std::string_view, GateKind> named[] = {
        {"I", GateKind::I},     {"SX", GateKind::SX},   {"SY", GateKind::SY},
        {"H", GateKind::H},     {"S", GateKind::S},     {"SDG", GateKind::SDG},
        {"HSDG", GateKind::HSDG}, {"CNOT", GateKind::CNOT},
    };
    for (const auto &[text, kind] : named) {
        if (name == text) {
            return CliffordGate(kind);
        }
    }
    if (name.starts_with("C1_")) {
        unsigned index = 0;
        auto digits = name.substr(3);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty() && index < 24) {
            return c1(index);
        }
    }
    if (name.starts_with("TABLEAU[") && name.ends_with("]")) {
        return tableau(CliffordTableau::from_str(name.substr(8, name.size() - 9)));
    }
    throw DomainError("unknown gate name '" + std::string(name) + "'");
}

size_t CliffordGate::arity() const {
    switch (kind_) {
        case GateKind::CNOT:
            return 2;
        case GateKind::TABLEAU:
            return tableau_->num_qubits();
        default:
            return 1;
    }
}

std::string CliffordGate::name() const {
    switch (kind_) {
        case GateKind::I:
            return "I";
        case GateKind::SX:
            return "SX";
        case GateKind::SY:
            return "SY";
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::SDG:
            return "SDG";
        case GateKind::HSDG:
            return "HSDG";
        case GateKind::C1:
            return "C1_" + std::to_string(c1_index_);
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::TABLEAU:
            return "TABLEAU[" + tableau_->str() + "]";
    }
    return "?";
}

std::string CliffordGate::noise_key() const {
    return kind_ == GateKind::TABLEAU ? std::string("TABLEAU") : name();
}

const CliffordTableau &CliffordGate::local_tableau() const {
    if (kind_ == GateKind::C1) {
        return c1_table()[c1_index_];
    }
    if (kind_ == GateKind::TABLEAU) {
        return *tableau_;
    }
    return named_tableau(kind_);
}

CliffordGate CliffordGate::inverse() const {
    switch (kind_) {
        case GateKind::I:
        case GateKind::H:
        case GateKind::CNOT:
            return *this;
        case GateKind::S:
            return CliffordGate(GateKind::SDG);
        case GateKind::SDG:
            return CliffordGate(GateKind::S);
        case GateKind::TABLEAU:
            return tableau(tableau_->inverse());
        default:
            return c1(single_qubit_clifford_index(local_tableau().inverse()));
    }
}

bool CliffordGate::operator==(const CliffordGate &other) const {
    if (kind_ != other.kind_) {
        return false;
    }
    if (kind_ == GateKind::C1) {
        return c1_index_ == other.c1_index_;
    }
    if (kind_ == GateKind::TABLEAU) {
        return *tableau_ == *other.tableau_;
    }
    return true;
}

void validate_gate_qubits(const CliffordGate &g, std::span<const size_t> qubits, size_t num_qubits) {
    if (qubits.size() != g.arity()) {
        throw DomainError(
            "gate " + g.noise_key() + " expects " + std::to_string(g.arity()) + " qubits, got " +
            std::to_string(qubits.size()));
    }
    for (size_t a = 0; a < qubits.size(); a++) {
        if (qubits[a] >= num_qubits) {
            throw DomainError(
                "qubit index " + std::to_string(qubits[a]) + " out of range for n=" + std::to_string(num_qubits));
        }
        for (size_t b = 0; b < a; b++) {
            if (qubits[a] == qubits[b]) {
                throw DomainError("repeated qubit index " + std::to_string(qubits[a]) + " in gate " + g.noise_key());
            }
        }
    }
}

void conjugate_by_gate_inplace(PauliOperator &p, const CliffordGate &g, std::span<const size_t> qubits) {
    if (const LocalTable *table = fast_table(g)) {
        uint64_t local = 0;
        for (size_t a = 0; a < qubits.size(); a++) {
            local |= uint64_t(static_cast<uint8_t>(p.get(qubits[a]))) << (2 * a);
        }
        if (local == 0) {
            return;
        }
        uint64_t img = table->image[local];
        for (size_t a = 0; a < qubits.size(); a++) {
            p.set(qubits[a], static_cast<Pauli1>((img >> (2 * a)) & 3));
        }
        p.set_phase(p.phase() + table->phase[local]);
        return;
    }
    const CliffordTableau &t = g.local_tableau();
    PauliOperator local(qubits.size());
    bool trivial = true;
    for (size_t a = 0; a < qubits.size(); a++) {
        Pauli1 v = p.get(qubits[a]);
        local.set(a, v);
        trivial &= v == Pauli1::I;
    }
    if (trivial) {
        return;
    }
    PauliOperator img = t.conjugate(local);
    for (size_t a = 0; a < qubits.size(); a++) {
        p.set(qubits[a], img.get(a));
    }
    p.set_phase(p.phase() + img.phase());
}

PauliOperator conjugate_by_gate(const PauliOperator &p, const CliffordGate &g, std::span<const size_t> qubits) {
    validate_gate_qubits(g, qubits, p.num_qubits());
    PauliOperator result = p;
    conjugate_by_gate_inplace(result, g, qubits);
    return result;
}

}  // namespace birb
