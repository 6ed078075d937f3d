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

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "birb/circuit.hpp"
#include "birb/rng.hpp"

namespace birb {

// Superoperators are Pauli transfer matrices, R_ab = Tr(P_a E(P_b)) / 2^k.
// Basis index of a k-qubit Pauli: sum_j d_j 4^j with digits I=0 X=1 Y=2 Z=3,
// where digit j refers to the j-th qubit of the support.
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

enum class GeneratorKind {
    Stochastic,   // P rho P - rho
    Hamiltonian,  // -i [P, rho]
    Active,       // i (P rho Q - Q rho P + 1/2 {[P, Q], rho})
    Correlation,  // P rho Q + Q rho P - 1/2 {{P, Q}, rho}
};

std::string generator_kind_name(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string &name);

/// Elementary error generator on the local support of a gate. `p` and `q`
/// are local Pauli indices; `q` is only used by the two-Pauli kinds.
struct ErrorGenerator {
    GeneratorKind kind = GeneratorKind::Stochastic;
    uint64_t p = 0;
    uint64_t q = 0;
    double rate = 0;

    static ErrorGenerator stochastic(uint64_t p, double rate) {
        return {GeneratorKind::Stochastic, p, 0, rate};
    }
    static ErrorGenerator hamiltonian(uint64_t p, double rate) {
        return {GeneratorKind::Hamiltonian, p, 0, rate};
    }
    static ErrorGenerator active(uint64_t p, uint64_t q, double rate) {
        return {GeneratorKind::Active, p, q, rate};
    }
    static ErrorGenerator correlation(uint64_t p, uint64_t q, double rate) {
        return {GeneratorKind::Correlation, p, q, rate};
    }
    bool two_pauli() const {
        return kind == GeneratorKind::Active || kind == GeneratorKind::Correlation;
    }
    bool operator==(const ErrorGenerator &other) const = default;
};

/// Dense 2^k x 2^k matrix of a local Pauli index.
CMatrix pauli_matrix(uint64_t index, size_t k);

/// PTM of the generator alone, 4^k x 4^k.
Matrix generator_matrix(const ErrorGenerator &g, size_t k);

/// exp(sum rate * generator).
Matrix channel_from_generators(const std::vector<ErrorGenerator> &gens, size_t k);

/// Exact Pauli error probabilities p_a of exp(sum s_P S_P), indexed by
/// local Pauli index. Throws DomainError on a non-stochastic generator.
std::vector<double> pauli_error_distribution(const std::vector<ErrorGenerator> &gens, size_t k);

/// Choi matrix (trace 1) of a PTM.
CMatrix choi_matrix(const Matrix &ptm);
/// Smallest Choi eigenvalue is above -tol.
bool is_completely_positive(const Matrix &ptm, double tol = 1e-9);
bool is_trace_preserving(const Matrix &ptm, double tol = 1e-12);

/// Tr(R) / 4^k.
double entanglement_fidelity(const Matrix &ptm);
/// (Tr(R) - 1) / (4^k - 1).
double polarization(const Matrix &ptm);
/// Mean of R_PP over the non-identity Paulis.
double polarization_pauli_average(const Matrix &ptm);

/// Pre-measurement or post-preparation single-qubit channel.
enum class SpamKind { None, Bitflip, AmplitudeDamping };
struct SpamChannel {
    SpamKind kind = SpamKind::None;
    double p_m = 0;
    bool operator==(const SpamChannel &other) const = default;
};
std::string spam_kind_name(SpamKind kind);
SpamKind parse_spam_kind(const std::string &name);

/// Generators of a SPAM channel: p_m S_X, or p_m (S_X + S_Y - A_{X,Y}).
std::vector<ErrorGenerator> spam_generators(const SpamChannel &spec);
/// 4 x 4 PTM of a SPAM channel.
Matrix measurement_channel(const SpamChannel &spec);

/// Post-gate noise for one (gate, qubits) placement, with cached channel data.
struct GateNoiseEntry {
    std::string gate;
    std::vector<size_t> qubits;
    std::vector<ErrorGenerator> generators;
    Matrix ptm;
    bool stochastic = true;
    /// Pauli error probabilities; only for stochastic entries.
    std::vector<double> distribution;
    /// Cumulative form of `distribution`.
    std::vector<double> cdf;
};

class NoiseModel {
   public:
    NoiseModel() = default;
    explicit NoiseModel(size_t num_qubits) : n_(num_qubits) {
    }

    size_t num_qubits() const {
        return n_;
    }

    /// Attaches post-gate noise. `gate` is a noise key such as "CNOT" or
    /// "TABLEAU". Replaces any previous entry for the same placement.
    void set_gate_error(const std::string &gate, const std::vector<size_t> &qubits,
                        std::vector<ErrorGenerator> generators);
    /// nullptr when the placement is ideal.
    const GateNoiseEntry *gate_error(const std::string &gate, const std::vector<size_t> &qubits) const;
    std::vector<const GateNoiseEntry *> gate_errors() const;

    /// Polarization of a global depolarizing channel after every core layer.
    void set_layer_depolarizing(double gamma);
    double layer_depolarizing() const {
        return layer_gamma_;
    }

    void set_measurement(size_t qubit, SpamChannel channel);
    void set_prep(size_t qubit, SpamChannel channel);
    const SpamChannel &measurement(size_t qubit) const;
    const SpamChannel &prep(size_t qubit) const;
    bool has_spam() const;

    /// Only stochastic gate errors, global depolarizing and bitflip SPAM.
    bool is_stochastic() const;
    /// No gate errors, no depolarizing, no SPAM.
    bool is_trivial() const;

    /// Checks the referenced gates exist and the placements fit in n qubits.
    void validate() const;

   private:
    size_t n_ = 0;
    std::map<std::string, std::shared_ptr<const GateNoiseEntry>> gates_;
    double layer_gamma_ = 1.0;
    std::vector<SpamChannel> measurement_;
    std::vector<SpamChannel> prep_;
};

enum class ModelFamily { Stochastic, Hamiltonian, Both };
std::string model_family_name(ModelFamily f);
ModelFamily parse_model_family(const std::string &name);

struct RandomModelOptions {
    /// Use h = sqrt(2p - s) for the mixed family instead of sqrt(2(p - s)).
    bool literal_mixed_h = false;
    /// Rate scale of single-qubit gates relative to two-qubit gates when
    /// n >= 2. A value < 0 selects the default 0.1.
    double chi = -1;
};

/// Totals (s, h) that bound the per-gate rates of a family at strength p.
/// Draws s for the mixed family.
std::pair<double, double> family_rates(ModelFamily family, size_t n, double p, const RandomModelOptions &opts,
                                       Rng &rng);

/// Per gate placement: total stochastic rate uniform in [0, chi s], total
/// Hamiltonian rate uniform in [0, chi h], each split randomly across the
/// 4^k - 1 generators. Noisy gates are the non-identity single-qubit gates of
/// the set on every qubit and the two-qubit gate on every edge, both ways.
NoiseModel sample_model_with_rates(size_t n, double s, double h, const GateSetSpec &gate_set,
                                   const RandomModelOptions &opts, Rng &rng);

NoiseModel sample_random_model(ModelFamily family, size_t n, double p, const GateSetSpec &gate_set,
                               const RandomModelOptions &opts, Rng &rng);

/// Random stochastic generators with total rate `total` on k qubits.
std::vector<ErrorGenerator> random_stochastic_generators(size_t k, double total, Rng &rng);
/// Random Hamiltonian generators with sum of squared rates `total`^2.
std::vector<ErrorGenerator> random_hamiltonian_generators(size_t k, double total, Rng &rng);

}  // namespace birb
