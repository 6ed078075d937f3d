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

#include "birb/noise.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "birb/errors.hpp"

namespace birb {

namespace {

constexpr size_t kMaxGeneratorQubits = 3;

using cd = std::complex<double>;

void check_local(uint64_t index, size_t k, const char *what) {
    if (index == 0 || index >= (uint64_t{1} << (2 * k))) {
        throw DomainError(std::string(what) + ": Pauli must be non-identity on a " + std::to_string(k) +
                          "-qubit support");
    }
}

std::string placement_key(const std::string &gate, const std::vector<size_t> &qubits) {
    std::string key = gate + "(";
    for (size_t a = 0; a < qubits.size(); a++) {
        if (a) {
            key += ',';
        }
        key += std::to_string(qubits[a]);
    }
    return key + ")";
}

std::vector<double> simplex_weights(size_t count, Rng &rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> w(count);
    double total = 0;
    for (auto &x : w) {
        x = exp1(rng);
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

}  // namespace

std::string generator_kind_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::Stochastic:
            return "stochastic";
        case GeneratorKind::Hamiltonian:
            return "hamiltonian";
        case GeneratorKind::Active:
            return "active";
        default:
            return "correlation";
    }
}

GeneratorKind parse_generator_kind(const std::string &name) {
    if (name == "stochastic" || name == "S") {
        return GeneratorKind::Stochastic;
    }
    if (name == "hamiltonian" || name == "H") {
        return GeneratorKind::Hamiltonian;
    }
    if (name == "active" || name == "A") {
        return GeneratorKind::Active;
    }
    if (name == "correlation" || name == "C") {
        return GeneratorKind::Correlation;
    }
    throw ConfigError("unknown generator kind '" + name + "'");
}

CMatrix pauli_matrix(uint64_t index, size_t k) {
    static const cd sigma[4][2][2] = {
        {{1, 0}, {0, 1}},
        {{0, 1}, {1, 0}},
        {{0, cd(0, -1)}, {cd(0, 1), 0}},
        {{1, 0}, {0, -1}},
    };
    size_t dim = size_t{1} << k;
    CMatrix m(dim, dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            cd v = 1;
            for (size_t q = 0; q < k && v != cd(0); q++) {
                v *= sigma[(index >> (2 * q)) & 3][(r >> q) & 1][(c >> q) & 1];
            }
            m(r, c) = v;
        }
    }
    return m;
}

Matrix generator_matrix(const ErrorGenerator &g, size_t k) {
    if (k == 0 || k > kMaxGeneratorQubits) {
        throw CapabilityError("generator construction supports 1.." + std::to_string(kMaxGeneratorQubits) +
                              " qubit supports, got " + std::to_string(k));
    }
    check_local(g.p, k, "generator");
    if (g.two_pauli()) {
        check_local(g.q, k, "generator");
    }
    size_t dim = size_t{1} << (2 * k);
    double norm = std::ldexp(1.0, -static_cast<int>(k));
    CMatrix P = pauli_matrix(g.p, k);
    CMatrix Q = g.two_pauli() ? pauli_matrix(g.q, k) : CMatrix();
    const cd I(0, 1);

    std::vector<CMatrix> basis(dim);
    for (size_t a = 0; a < dim; a++) {
        basis[a] = pauli_matrix(a, k);
    }
    Matrix out(dim, dim);
    for (size_t b = 0; b < dim; b++) {
        const CMatrix &rho = basis[b];
        CMatrix L;
        switch (g.kind) {
            case GeneratorKind::Stochastic:
                L = P * rho * P - rho;
                break;
            case GeneratorKind::Hamiltonian:
                L = -I * (P * rho - rho * P);
                break;
            case GeneratorKind::Active: {
                CMatrix comm = P * Q - Q * P;
                L = I * (P * rho * Q - Q * rho * P + 0.5 * (comm * rho + rho * comm));
                break;
            }
            case GeneratorKind::Correlation: {
                CMatrix anti = P * Q + Q * P;
                L = P * rho * Q + Q * rho * P - 0.5 * (anti * rho + rho * anti);
                break;
            }
        }
        for (size_t a = 0; a < dim; a++) {
            cd v = (basis[a] * L).trace() * norm;
            out(a, b) = v.real();
        }
    }
    return out;
}

Matrix channel_from_generators(const std::vector<ErrorGenerator> &gens, size_t k) {
    size_t dim = size_t{1} << (2 * k);
    Matrix G = Matrix::Zero(dim, dim);
    bool diagonal = true;
    for (const auto &g : gens) {
        if (!std::isfinite(g.rate)) {
            throw DomainError("non-finite generator rate");
        }
        if (g.rate == 0) {
            continue;
        }
        if (g.kind == GeneratorKind::Stochastic && g.rate < 0) {
            throw DomainError("stochastic rates must be >= 0");
        }
        G += g.rate * generator_matrix(g, k);
        diagonal &= g.kind == GeneratorKind::Stochastic;
    }
    if (diagonal) {
        Matrix out = Matrix::Zero(dim, dim);
        for (size_t a = 0; a < dim; a++) {
            out(a, a) = std::exp(G(a, a));
        }
        return out;
    }
    Matrix out = G.exp();
    if (!out.allFinite()) {
        throw DomainError("matrix exponential did not converge");
    }
    return out;
}

std::vector<double> pauli_error_distribution(const std::vector<ErrorGenerator> &gens, size_t k) {
    uint64_t dim = uint64_t{1} << (2 * k);
    // Pauli fidelities lambda_b = exp(-2 sum_{P anticommutes with b} s_P).
    std::vector<double> log_fid(dim, 0.0);
    for (const auto &g : gens) {
        if (g.kind != GeneratorKind::Stochastic) {
            throw DomainError("pauli_error_distribution: generator '" + generator_kind_name(g.kind) +
                              "' is not stochastic");
        }
        if (!std::isfinite(g.rate) || g.rate < 0) {
            throw DomainError("stochastic rates must be finite and >= 0");
        }
        check_local(g.p, k, "generator");
        for (uint64_t b = 0; b < dim; b++) {
            if (indices_anticommute(g.p, b)) {
                log_fid[b] -= 2 * g.rate;
            }
        }
    }
    std::vector<double> out(dim, 0.0);
    double total = 0;
    for (uint64_t a = 0; a < dim; a++) {
        double acc = 0;
        for (uint64_t b = 0; b < dim; b++) {
            double lam = std::exp(log_fid[b]);
            acc += indices_anticommute(a, b) ? -lam : lam;
        }
        acc /= static_cast<double>(dim);
        out[a] = acc < 0 ? 0 : acc;
        total += out[a];
    }
    for (auto &x : out) {
        x /= total;
    }
    return out;
}

CMatrix choi_matrix(const Matrix &ptm) {
    size_t dim = ptm.rows();
    size_t k = 0;
    while ((size_t{1} << (2 * k)) < dim) {
        k++;
    }
    if ((size_t{1} << (2 * k)) != dim || ptm.cols() != ptm.rows()) {
        throw DimensionError("PTM must be 4^k x 4^k");
    }
    size_t d = size_t{1} << k;
    CMatrix J = CMatrix::Zero(d * d, d * d);
    std::vector<CMatrix> basis(dim);
    for (size_t a = 0; a < dim; a++) {
        basis[a] = pauli_matrix(a, k);
    }
    for (size_t a = 0; a < dim; a++) {
        for (size_t b = 0; b < dim; b++) {
            double r = ptm(a, b);
            if (r == 0) {
                continue;
            }
            CMatrix bt = basis[b].transpose();
            for (size_t i = 0; i < d; i++) {
                for (size_t j = 0; j < d; j++) {
                    if (basis[a](i, j) == cd(0)) {
                        continue;
                    }
                    J.block(i * d, j * d, d, d) += r * basis[a](i, j) * bt;
                }
            }
        }
    }
    return J / static_cast<double>(dim);
}

bool is_completely_positive(const Matrix &ptm, double tol) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(choi_matrix(ptm), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() > -tol;
}

bool is_trace_preserving(const Matrix &ptm, double tol) {
    if (std::abs(ptm(0, 0) - 1) > tol) {
        return false;
    }
    for (Eigen::Index b = 1; b < ptm.cols(); b++) {
        if (std::abs(ptm(0, b)) > tol) {
            return false;
        }
    }
    return true;
}

double entanglement_fidelity(const Matrix &ptm) {
    return ptm.trace() / static_cast<double>(ptm.rows());
}

double polarization(const Matrix &ptm) {
    double d2 = static_cast<double>(ptm.rows());
    return (d2 * entanglement_fidelity(ptm) - 1) / (d2 - 1);
}

double polarization_pauli_average(const Matrix &ptm) {
    double acc = 0;
    for (Eigen::Index a = 1; a < ptm.rows(); a++) {
        acc += ptm(a, a);
    }
    return acc / static_cast<double>(ptm.rows() - 1);
}

std::string spam_kind_name(SpamKind kind) {
    switch (kind) {
        case SpamKind::None:
            return "none";
        case SpamKind::Bitflip:
            return "bitflip";
        default:
            return "amplitude_damping";
    }
}

SpamKind parse_spam_kind(const std::string &name) {
    if (name == "none") {
        return SpamKind::None;
    }
    if (name == "bitflip") {
        return SpamKind::Bitflip;
    }
    if (name == "amplitude_damping") {
        return SpamKind::AmplitudeDamping;
    }
    throw ConfigError("unknown SPAM channel kind '" + name + "'");
}

std::vector<ErrorGenerator> spam_generators(const SpamChannel &spec) {
    if (!(spec.p_m >= 0) || !std::isfinite(spec.p_m)) {
        throw DomainError("p_m must be finite and >= 0");
    }
    constexpr uint64_t X = 1, Y = 2;
    switch (spec.kind) {
        case SpamKind::None:
            return {};
        case SpamKind::Bitflip:
            return {ErrorGenerator::stochastic(X, spec.p_m)};
        default:
            return {ErrorGenerator::stochastic(X, spec.p_m), ErrorGenerator::stochastic(Y, spec.p_m),
                    ErrorGenerator::active(X, Y, -spec.p_m)};
    }
}

Matrix measurement_channel(const SpamChannel &spec) {
    return channel_from_generators(spam_generators(spec), 1);
}

void NoiseModel::set_gate_error(const std::string &gate, const std::vector<size_t> &qubits,
                                std::vector<ErrorGenerator> generators) {
    size_t k = qubits.size();
    if (k == 0) {
        throw DomainError("gate error needs a non-empty support");
    }
    for (size_t q : qubits) {
        if (q >= n_) {
            throw DomainError("gate error on qubit " + std::to_string(q) + " outside n=" + std::to_string(n_));
        }
    }
    auto entry = std::make_shared<GateNoiseEntry>();
    entry->gate = gate;
    entry->qubits = qubits;
    entry->generators = std::move(generators);
    for (const auto &g : entry->generators) {
        entry->stochastic &= g.kind == GeneratorKind::Stochastic;
    }
    entry->ptm = channel_from_generators(entry->generators, k);
    if (entry->stochastic) {
        entry->distribution = pauli_error_distribution(entry->generators, k);
        entry->cdf.resize(entry->distribution.size());
        double acc = 0;
        for (size_t a = 0; a < entry->distribution.size(); a++) {
            acc += entry->distribution[a];
            entry->cdf[a] = acc;
        }
        entry->cdf.back() = 1.0;
    }
    gates_[placement_key(gate, qubits)] = std::move(entry);
}

const GateNoiseEntry *NoiseModel::gate_error(const std::string &gate, const std::vector<size_t> &qubits) const {
    if (gates_.empty()) {
        return nullptr;
    }
    auto it = gates_.find(placement_key(gate, qubits));
    return it == gates_.end() ? nullptr : it->second.get();
}

std::vector<const GateNoiseEntry *> NoiseModel::gate_errors() const {
    std::vector<const GateNoiseEntry *> out;
    for (const auto &[key, entry] : gates_) {
        out.push_back(entry.get());
    }
    return out;
}

void NoiseModel::set_layer_depolarizing(double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) {
        throw DomainError("layer depolarizing polarization must lie in [0, 1]");
    }
    layer_gamma_ = gamma;
}

void NoiseModel::set_measurement(size_t qubit, SpamChannel channel) {
    if (qubit >= n_) {
        throw DomainError("measurement channel on qubit outside the register");
    }
    spam_generators(channel);
    if (measurement_.empty()) {
        measurement_.resize(n_);
    }
    measurement_[qubit] = channel;
}

void NoiseModel::set_prep(size_t qubit, SpamChannel channel) {
    if (qubit >= n_) {
        throw DomainError("prep channel on qubit outside the register");
    }
    spam_generators(channel);
    if (prep_.empty()) {
        prep_.resize(n_);
    }
    prep_[qubit] = channel;
}

const SpamChannel &NoiseModel::measurement(size_t qubit) const {
    static const SpamChannel none;
    return measurement_.empty() ? none : measurement_.at(qubit);
}

const SpamChannel &NoiseModel::prep(size_t qubit) const {
    static const SpamChannel none;
    return prep_.empty() ? none : prep_.at(qubit);
}

bool NoiseModel::has_spam() const {
    for (const auto &c : measurement_) {
        if (c.kind != SpamKind::None && c.p_m > 0) {
            return true;
        }
    }
    for (const auto &c : prep_) {
        if (c.kind != SpamKind::None && c.p_m > 0) {
            return true;
        }
    }
    return false;
}

bool NoiseModel::is_stochastic() const {
    for (const auto &[key, entry] : gates_) {
        if (!entry->stochastic) {
            return false;
        }
    }
    for (const auto &c : measurement_) {
        if (c.kind == SpamKind::AmplitudeDamping && c.p_m > 0) {
            return false;
        }
    }
    for (const auto &c : prep_) {
        if (c.kind == SpamKind::AmplitudeDamping && c.p_m > 0) {
            return false;
        }
    }
    return true;
}

bool NoiseModel::is_trivial() const {
    for (const auto &[key, entry] : gates_) {
        for (const auto &g : entry->generators) {
            if (g.rate != 0) {
                return false;
            }
        }
    }
    return layer_gamma_ == 1.0 && !has_spam();
}

void NoiseModel::validate() const {
    for (const auto &[key, entry] : gates_) {
        if (entry->gate == "TABLEAU") {
            continue;
        }
        CliffordGate g;
        try {
            g = CliffordGate::from_name(entry->gate);
        } catch (const std::invalid_argument &) {
            throw ConfigError("noise.gates: unknown gate '" + entry->gate + "'");
        }
        if (g.arity() != entry->qubits.size()) {
            throw ConfigError("noise.gates: " + key + " has the wrong number of qubits");
        }
    }
}

std::string model_family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::Stochastic:
            return "stochastic";
        case ModelFamily::Hamiltonian:
            return "hamiltonian";
        default:
            return "both";
    }
}

ModelFamily parse_model_family(const std::string &name) {
    if (name == "stochastic") {
        return ModelFamily::Stochastic;
    }
    if (name == "hamiltonian") {
        return ModelFamily::Hamiltonian;
    }
    if (name == "both") {
        return ModelFamily::Both;
    }
    throw ConfigError("family: expected stochastic, hamiltonian or both, got '" + name + "'");
}

std::pair<double, double> family_rates(ModelFamily family, size_t n, double p, const RandomModelOptions &opts,
                                       Rng &rng) {
    if (!(p >= 0)) {
        throw DomainError("model strength p must be >= 0");
    }
    switch (family) {
        case ModelFamily::Stochastic:
            return {1.2 * p, 0.0};
        case ModelFamily::Hamiltonian:
            return {0.0, std::sqrt((n >= 4 ? 8.0 : 6.0) * p)};
        default: {
            double s = p * uniform01(rng);
            double h = opts.literal_mixed_h ? std::sqrt(2 * p - s) : std::sqrt(2 * (p - s));
            return {s, h};
        }
    }
}

std::vector<ErrorGenerator> random_stochastic_generators(size_t k, double total, Rng &rng) {
    size_t count = (size_t{1} << (2 * k)) - 1;
    auto w = simplex_weights(count, rng);
    std::vector<ErrorGenerator> out;
    for (size_t i = 0; i < count; i++) {
        out.push_back(ErrorGenerator::stochastic(i + 1, total * w[i]));
    }
    return out;
}

std::vector<ErrorGenerator> random_hamiltonian_generators(size_t k, double total, Rng &rng) {
    size_t count = (size_t{1} << (2 * k)) - 1;
    auto w = simplex_weights(count, rng);
    std::vector<ErrorGenerator> out;
    for (size_t i = 0; i < count; i++) {
        double h = total * std::sqrt(w[i]);
        out.push_back(ErrorGenerator::hamiltonian(i + 1, coin(rng) ? -h : h));
    }
    return out;
}

NoiseModel sample_model_with_rates(size_t n, double s, double h, const GateSetSpec &gate_set,
                                   const RandomModelOptions &opts, Rng &rng) {
    gate_set.validate(n);
    NoiseModel model(n);
    double chi1 = n >= 2 ? (opts.chi < 0 ? 0.1 : opts.chi) : 1.0;
    auto add = [&](const std::string &gate, std::vector<size_t> qubits, double chi) {
        size_t k = qubits.size();
        std::vector<ErrorGenerator> gens;
        double s_tot = chi * s * uniform01(rng);
        double h_tot = chi * h * uniform01(rng);
        if (s > 0) {
            gens = random_stochastic_generators(k, s_tot, rng);
        }
        if (h > 0) {
            auto hs = random_hamiltonian_generators(k, h_tot, rng);
            gens.insert(gens.end(), hs.begin(), hs.end());
        }
        model.set_gate_error(gate, qubits, std::move(gens));
    };
    for (const auto &name : gate_set.single_qubit_gates) {
        if (name == "I") {
            continue;
        }
        for (size_t q = 0; q < n; q++) {
            add(name, {q}, chi1);
        }
    }
    for (auto [a, b] : gate_set.connectivity) {
        add(gate_set.two_qubit_gate, {a, b}, 1.0);
        add(gate_set.two_qubit_gate, {b, a}, 1.0);
    }
    return model;
}

NoiseModel sample_random_model(ModelFamily family, size_t n, double p, const GateSetSpec &gate_set,
                               const RandomModelOptions &opts, Rng &rng) {
    auto [s, h] = family_rates(family, n, p, opts, rng);
    return sample_model_with_rates(n, s, h, gate_set, opts, rng);
}

}  // namespace birb
