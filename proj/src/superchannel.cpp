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

#include "birb/superchannel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "birb/dense_engine.hpp"
#include "birb/errors.hpp"

namespace birb {

namespace {

constexpr size_t kSuperchannelMaxQubits = 2;

}  // namespace

std::vector<WeightedLayer> enumerate_layers(const OmegaSpec &spec) {
    size_t n = spec.num_qubits;
    if (n == 0 || n > kSuperchannelMaxQubits) {
        throw CapabilityError("layer enumeration supports n <= 2");
    }
    spec.validate();
    const auto &names = spec.gate_set.single_qubit_gates;
    std::vector<WeightedLayer> out;
    // With n = 2 the only non-empty matching is the single edge, retained
    // with probability min(1, xi).
    double p_two = 0;
    if (n == 2 && spec.xi > 0) {
        p_two = std::min(1.0, spec.xi);
        CliffordGate two = CliffordGate::from_name(spec.gate_set.two_qubit_gate);
        for (auto [a, b] : {std::pair<size_t, size_t>{0, 1}, {1, 0}}) {
            GateLayer l(n);
            l.add(two, {a, b});
            out.push_back({std::move(l), p_two / 2});
        }
    }
    if (names.empty()) {
        if (p_two < 1) {
            out.push_back({GateLayer(n), 1 - p_two});
        }
        return out;
    }
    size_t m = names.size();
    size_t combos = n == 1 ? m : m * m;
    for (size_t c = 0; c < combos && p_two < 1; c++) {
        GateLayer l(n);
        l.add(CliffordGate::from_name(names[c % m]), {0});
        if (n == 2) {
            l.add(CliffordGate::from_name(names[c / m]), {1});
        }
        out.push_back({std::move(l), (1 - p_two) / static_cast<double>(combos)});
    }
    return out;
}

Matrix L_superchannel_matrix(const std::vector<WeightedLayer> &layers, const NoiseModel &noise) {
    if (layers.empty()) {
        throw DomainError("superchannel needs at least one layer");
    }
    size_t n = layers.front().layer.num_qubits();
    size_t dim = size_t{1} << (2 * n);
    Matrix L = Matrix::Zero(dim * dim, dim * dim);
    for (const auto &wl : layers) {
        Matrix noisy = layer_ptm(wl.layer, &noise, LayerRole::Core);
        // Ideal Clifford PTMs are signed permutations, so the inverse is the transpose.
        Matrix ideal_inv = layer_ptm(wl.layer, nullptr, LayerRole::Plain).transpose();
        // vec(X M Y) = (Y^T kron X) vec(M), column-major vec.
        for (size_t i = 0; i < dim; i++) {
            for (size_t j = 0; j < dim; j++) {
                double y = noisy(j, i);
                if (y == 0) {
                    continue;
                }
                L.block(i * dim, j * dim, dim, dim) += wl.probability * y * ideal_inv;
            }
        }
    }
    return L;
}

LSuperchannelReport build_L_superchannel(const OmegaSpec &spec, const NoiseModel &noise, Rng &rng,
                                         const LSuperchannelOptions &opts) {
    size_t n = spec.num_qubits;
    if (n == 0 || n > kSuperchannelMaxQubits) {
        throw CapabilityError("L superchannel supports n <= 2, got n=" + std::to_string(n));
    }
    LSuperchannelReport rep;
    rep.num_qubits = n;
    std::vector<WeightedLayer> layers;
    if (opts.monte_carlo_samples > 0) {
        rep.monte_carlo = true;
        rep.samples = opts.monte_carlo_samples;
        double w = 1.0 / static_cast<double>(opts.monte_carlo_samples);
        for (size_t k = 0; k < opts.monte_carlo_samples; k++) {
            layers.push_back({sample_omega_layer(spec, rng), w});
        }
    } else {
        layers = enumerate_layers(spec);
    }
    Matrix L = L_superchannel_matrix(layers, noise);
    Eigen::EigenSolver<Matrix> solver(L, false);
    if (solver.info() != Eigen::Success) {
        throw DomainError("eigendecomposition of the superchannel failed");
    }
    auto ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        rep.eigenvalues.push_back(ev[i]);
    }
    std::stable_sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                     [](const auto &a, const auto &b) { return std::abs(a) > std::abs(b); });
    for (const auto &mu : rep.eigenvalues) {
        if (std::abs(std::abs(mu) - 1) <= opts.unit_tolerance) {
            rep.unit_eigenvalues++;
        }
    }
    rep.lambda = rep.eigenvalues.size() > 1 ? std::abs(rep.eigenvalues[1]) : 0;
    return rep;
}

}  // namespace birb
