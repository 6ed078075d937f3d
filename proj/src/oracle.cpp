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

#include "birb/oracle.hpp"

#include <cmath>

#include "birb/dense_engine.hpp"
#include "birb/errors.hpp"
#include "birb/parallel.hpp"

namespace birb {

namespace {

bool pauli_only(const NoiseModel &noise) {
    for (const auto *e : noise.gate_errors()) {
        if (!e->stochastic) {
            return false;
        }
    }
    return true;
}

uint64_t local_index(const PauliOperator &p, const std::vector<size_t> &qubits) {
    uint64_t l = 0;
    for (size_t j = 0; j < qubits.size(); j++) {
        l |= uint64_t(static_cast<uint8_t>(p.get(qubits[j]))) << (2 * j);
    }
    return l;
}

// Pauli channels map each Pauli to a multiple of itself, so the trace of
// the composed error reduces to products of Pauli fidelities along paths.
double polarization_pauli(const Circuit &core, const NoiseModel &noise) {
    size_t n = core.num_qubits();
    if (n > kOracleFastMaxQubits) {
        throw CapabilityError("oracle supports n <= " + std::to_string(kOracleFastMaxQubits));
    }
    struct Noisy {
        std::vector<size_t> qubits;
        const Matrix *ptm;
    };
    std::vector<std::vector<Noisy>> noisy(core.depth());
    for (size_t t = 0; t < core.depth(); t++) {
        for (const auto &g : core.layer(t).gates()) {
            if (const GateNoiseEntry *e = noise.gate_error(g.gate.noise_key(), g.qubits)) {
                noisy[t].push_back({g.qubits, &e->ptm});
            }
        }
    }
    double gamma_layers = std::pow(noise.layer_depolarizing(), static_cast<double>(core.depth()));
    uint64_t count = uint64_t{1} << (2 * n);
    double total = 0;
    for (uint64_t idx = 1; idx < count; idx++) {
        PauliOperator p = PauliOperator::from_index(n, idx);
        double value = gamma_layers;
        for (size_t t = 0; t < core.depth() && value != 0; t++) {
            core.layer(t).conjugate_inplace(p);
            for (const auto &nz : noisy[t]) {
                uint64_t l = local_index(p, nz.qubits);
                value *= (*nz.ptm)(l, l);
            }
        }
        total += value;
    }
    return total / static_cast<double>(count - 1);
}

double polarization_dense(const Circuit &core, const NoiseModel &noise) {
    size_t n = core.num_qubits();
    check_dense_capacity(n);
    uint64_t count = uint64_t{1} << (2 * n);
    double total = 0;
    for (uint64_t idx = 1; idx < count; idx++) {
        std::vector<double> e(count, 0.0);
        e[idx] = 1.0;
        DenseState s = DenseState::from_vector(n, std::move(e));
        for (const auto &layer : core.layers()) {
            s.apply_layer(layer, noise, LayerRole::Core);
        }
        PauliOperator ideal = conjugate_by_circuit(PauliOperator::from_index(n, idx), core);
        total += s.expectation(ideal);
    }
    return total / static_cast<double>(count - 1);
}

}  // namespace

double circuit_polarization(const Circuit &core, const NoiseModel &noise) {
    if (noise.num_qubits() != core.num_qubits()) {
        throw DimensionError("noise model and circuit qubit counts differ");
    }
    return pauli_only(noise) ? polarization_pauli(core, noise) : polarization_dense(core, noise);
}

EpsilonOmegaEstimate epsilon_omega_oracle(const OmegaSpec &spec, const NoiseModel &noise,
                                          const std::vector<size_t> &depths, size_t K, Rng &rng,
                                          const OracleOptions &opts) {
    size_t n = spec.num_qubits;
    spec.validate();
    bool fast = pauli_only(noise);
    if (fast ? n > kOracleFastMaxQubits : n > kDenseMaxQubits) {
        throw CapabilityError("epsilon oracle: n=" + std::to_string(n) + " exceeds the exact polarization cap");
    }
    if (K == 0 || depths.empty()) {
        throw DomainError("epsilon oracle needs K >= 1 and at least one depth");
    }
    uint64_t base = rng();
    GroupedData data;
    data.depths = depths;
    data.values.assign(depths.size(), std::vector<double>(K));
    parallel_for(depths.size() * K, opts.workers, [&](size_t unit) {
        size_t i = unit / K, k = unit % K;
        Rng local = substream(base, "oracle-circuit", {depths[i], k});
        Circuit core(n);
        for (size_t t = 0; t < depths[i]; t++) {
            core.append(sample_omega_layer(spec, local));
        }
        data.values[i][k] = circuit_polarization(core, noise);
    });

    EpsilonOmegaEstimate est;
    est.num_qubits = n;
    est.method = fast ? "pauli-fidelity" : "dense";
    est.points = depth_points(data);
    bool constant = true;
    for (const auto &v : data.values) {
        for (double x : v) {
            constant &= std::abs(x - 1.0) < 1e-15;
        }
    }
    if (constant) {
        // Noise-free: the decay is identically 1.
        est.epsilon = 0;
        return est;
    }
    FitOptions fit_opts = opts.fit;
    fit_opts.convention = RConvention::Entanglement;
    DecayFit fit = fit_decay(est.points, n, fit_opts);
    est.p_rc = fit.p;
    est.A = fit.A;
    est.B = fit.B;
    est.free_B = fit.free_B;
    est.epsilon = r_omega(fit.p, n, RConvention::Entanglement);
    if (opts.bootstrap > 0) {
        BootstrapResult b = bootstrap(data, n, opts.bootstrap, rng, fit_opts, opts.workers);
        est.sigma = b.sigma_r;
    }
    return est;
}

}  // namespace birb
