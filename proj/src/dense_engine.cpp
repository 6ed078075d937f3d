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

#include "birb/dense_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "birb/errors.hpp"
#include "birb/log.hpp"

namespace birb {

namespace {

struct LocalMap {
    std::vector<uint64_t> offset;  // local index -> global offset
    uint64_t mask = 0;             // global digits touched by the support
};

LocalMap local_map(std::span<const size_t> qubits) {
    LocalMap m;
    size_t k = qubits.size();
    m.offset.assign(uint64_t{1} << (2 * k), 0);
    for (uint64_t l = 0; l < m.offset.size(); l++) {
        uint64_t off = 0;
        for (size_t j = 0; j < k; j++) {
            off |= ((l >> (2 * j)) & 3) << (2 * qubits[j]);
        }
        m.offset[l] = off;
    }
    for (size_t q : qubits) {
        m.mask |= uint64_t{3} << (2 * q);
    }
    return m;
}

LayerRole role_of(size_t k, size_t depth) {
    if (k == 0) {
        return LayerRole::Prep;
    }
    return k + 1 == depth ? LayerRole::Measure : LayerRole::Core;
}

DenseState final_state(const BirbCircuit &bc, const NoiseModel &noise) {
    size_t n = bc.num_qubits();
    check_dense_capacity(n);
    if (noise.num_qubits() != n) {
        throw DimensionError("noise model is for " + std::to_string(noise.num_qubits()) + " qubits, circuit has " +
                             std::to_string(n));
    }
    DenseState state(n);
    size_t depth = bc.circuit.depth();
    for (size_t k = 0; k < depth; k++) {
        state.apply_layer(bc.circuit.layer(k), noise, role_of(k, depth));
    }
    return state;
}

}  // namespace

void check_dense_capacity(size_t num_qubits) {
    if (num_qubits > kDenseMaxQubits) {
        throw CapabilityError("dense engine supports n <= " + std::to_string(kDenseMaxQubits) + ", got n=" +
                              std::to_string(num_qubits) + "; use the frame engine for n > " +
                              std::to_string(kDenseMaxQubits) + " stochastic models");
    }
}

DenseState::DenseState(size_t num_qubits) : n_(num_qubits) {
    check_dense_capacity(num_qubits);
    v_.assign(uint64_t{1} << (2 * n_), 0.0);
    // <0...0| P |0...0> = 1 exactly for P in {I, Z}^n.
    for (uint64_t z = 0; z < (uint64_t{1} << n_); z++) {
        uint64_t idx = 0;
        for (size_t q = 0; q < n_; q++) {
            if ((z >> q) & 1) {
                idx |= uint64_t{3} << (2 * q);
            }
        }
        v_[idx] = 1.0;
    }
}

DenseState DenseState::from_vector(size_t num_qubits, std::vector<double> v) {
    check_dense_capacity(num_qubits);
    if (v.size() != (uint64_t{1} << (2 * num_qubits))) {
        throw DimensionError("dense state vector must have length 4^n");
    }
    DenseState s;
    s.n_ = num_qubits;
    s.v_ = std::move(v);
    return s;
}

double DenseState::expectation(const PauliOperator &p) const {
    if (p.num_qubits() != n_) {
        throw DimensionError("Pauli and state qubit counts differ");
    }
    if (!p.is_hermitian()) {
        throw DomainError("expectation needs a Hermitian Pauli");
    }
    return p.sign() * v_[p.unsigned_part().index()];
}

void DenseState::apply_gate(const CliffordGate &g, std::span<const size_t> qubits) {
    validate_gate_qubits(g, qubits, n_);
    if (g.kind() == GateKind::I) {
        return;
    }
    size_t k = qubits.size();
    const CliffordTableau &t = g.local_tableau();
    LocalMap m = local_map(qubits);
    std::vector<uint64_t> image(m.offset.size());
    std::vector<double> sign(m.offset.size());
    for (uint64_t l = 0; l < m.offset.size(); l++) {
        PauliOperator q = t.conjugate(PauliOperator::from_index(k, l));
        sign[l] = q.sign();
        image[l] = m.offset[q.unsigned_part().index()];
    }
    scratch_.assign(v_.size(), 0.0);
    for (uint64_t base = 0; base < v_.size(); base++) {
        if (base & m.mask) {
            continue;
        }
        for (uint64_t l = 0; l < m.offset.size(); l++) {
            scratch_[base + image[l]] = sign[l] * v_[base + m.offset[l]];
        }
    }
    v_.swap(scratch_);
}

void DenseState::apply_channel(const Matrix &ptm, std::span<const size_t> qubits) {
    LocalMap m = local_map(qubits);
    size_t dim = m.offset.size();
    if (static_cast<size_t>(ptm.rows()) != dim || static_cast<size_t>(ptm.cols()) != dim) {
        throw DimensionError("channel size does not match its support");
    }
    bool diagonal = ptm.isDiagonal(0.0);
    Eigen::VectorXd x(dim), y(dim);
    for (uint64_t base = 0; base < v_.size(); base++) {
        if (base & m.mask) {
            continue;
        }
        if (diagonal) {
            for (size_t l = 0; l < dim; l++) {
                v_[base + m.offset[l]] *= ptm(l, l);
            }
            continue;
        }
        for (size_t l = 0; l < dim; l++) {
            x[l] = v_[base + m.offset[l]];
        }
        y.noalias() = ptm * x;
        for (size_t l = 0; l < dim; l++) {
            v_[base + m.offset[l]] = y[l];
        }
    }
}

void DenseState::depolarize(double gamma) {
    for (size_t i = 1; i < v_.size(); i++) {
        v_[i] *= gamma;
    }
}

void DenseState::apply_layer(const GateLayer &layer, const NoiseModel &noise, LayerRole role) {
    if (layer.num_qubits() != n_) {
        throw DimensionError("layer and state qubit counts differ");
    }
    for (const auto &g : layer.gates()) {
        apply_gate(g.gate, g.qubits);
        if (const GateNoiseEntry *e = noise.gate_error(g.gate.noise_key(), g.qubits)) {
            apply_channel(e->ptm, g.qubits);
        }
    }
    if (role == LayerRole::Core && noise.layer_depolarizing() < 1.0) {
        depolarize(noise.layer_depolarizing());
    }
    if (role == LayerRole::Prep || role == LayerRole::Measure) {
        for (size_t q = 0; q < n_; q++) {
            const SpamChannel &c = role == LayerRole::Prep ? noise.prep(q) : noise.measurement(q);
            if (c.kind != SpamKind::None && c.p_m > 0) {
                size_t qs[1] = {q};
                apply_channel(measurement_channel(c), qs);
            }
        }
    }
}

std::vector<double> DenseState::z_distribution() const {
    uint64_t dim = uint64_t{1} << n_;
    std::vector<double> w(dim);
    for (uint64_t z = 0; z < dim; z++) {
        uint64_t idx = 0;
        for (size_t q = 0; q < n_; q++) {
            if ((z >> q) & 1) {
                idx |= uint64_t{3} << (2 * q);
            }
        }
        w[z] = v_[idx];
    }
    for (uint64_t len = 1; len < dim; len <<= 1) {
        for (uint64_t i = 0; i < dim; i += 2 * len) {
            for (uint64_t j = i; j < i + len; j++) {
                double a = w[j], b = w[j + len];
                w[j] = a + b;
                w[j + len] = a - b;
            }
        }
    }
    for (auto &x : w) {
        x /= static_cast<double>(dim);
    }
    return w;
}

double dense_expectation(const BirbCircuit &bc, const NoiseModel &noise) {
    return final_state(bc, noise).expectation(bc.target);
}

std::vector<double> dense_output_distribution(const BirbCircuit &bc, const NoiseModel &noise) {
    std::vector<double> dist = final_state(bc, noise).z_distribution();
    double worst = 0, total = 0;
    for (auto &x : dist) {
        worst = std::min(worst, x);
        if (x < 0) {
            x = 0;
        }
        total += x;
    }
    if (worst < -1e-6) {
        log_warn("output distribution has negative entries down to " + std::to_string(worst) +
                 "; clipped and renormalized");
    }
    for (auto &x : dist) {
        x /= total;
    }
    return dist;
}

std::vector<int> sample_shots(const BirbCircuit &bc, const std::vector<double> &distribution, uint64_t shots,
                              Rng &rng) {
    std::vector<int> out;
    out.reserve(shots);
    if (shots == 0) {
        return out;
    }
    std::vector<double> cdf(distribution.size());
    std::vector<int> values(distribution.size());
    double acc = 0;
    for (uint64_t b = 0; b < distribution.size(); b++) {
        acc += distribution[b];
        cdf[b] = acc;
        uint64_t word = b;
        values[b] = bc.value(std::span<const uint64_t>(&word, 1));
    }
    for (uint64_t s = 0; s < shots; s++) {
        double u = uniform01(rng) * acc;
        size_t b = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (b >= cdf.size()) {
            b = cdf.size() - 1;
        }
        out.push_back(values[b]);
    }
    return out;
}

std::vector<int> dense_sample(const BirbCircuit &bc, const NoiseModel &noise, uint64_t shots, Rng &rng) {
    if (shots == 0) {
        return {};
    }
    return sample_shots(bc, dense_output_distribution(bc, noise), shots, rng);
}

Matrix layer_ptm(const GateLayer &layer, const NoiseModel *noise, LayerRole role) {
    size_t n = layer.num_qubits();
    if (n > 3) {
        throw CapabilityError("full layer PTMs are limited to n <= 3");
    }
    NoiseModel ideal(n);
    const NoiseModel &model = noise ? *noise : ideal;
    size_t dim = size_t{1} << (2 * n);
    Matrix out(dim, dim);
    for (size_t b = 0; b < dim; b++) {
        std::vector<double> e(dim, 0.0);
        e[b] = 1.0;
        DenseState s = DenseState::from_vector(n, std::move(e));
        s.apply_layer(layer, model, role);
        for (size_t a = 0; a < dim; a++) {
            out(a, b) = s.data()[a];
        }
    }
    return out;
}

}  // namespace birb
