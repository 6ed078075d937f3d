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

#include <span>
#include <vector>

#include "birb/noise.hpp"
#include "birb/sampler.hpp"

namespace birb {

constexpr size_t kDenseMaxQubits = 6;

/// Where a layer sits in a BiRB circuit; decides which extra channels apply.
enum class LayerRole { Prep, Core, Measure, Plain };

/// State as the vector of Pauli expectations Tr(P rho), indexed like the
/// PTM basis. The identity entry is the trace.
class DenseState {
   public:
    DenseState() = default;
    /// |0...0>.
    explicit DenseState(size_t num_qubits);
    static DenseState from_vector(size_t num_qubits, std::vector<double> v);

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<double> &data() const {
        return v_;
    }
    std::vector<double> &data() {
        return v_;
    }
    /// Tr(p rho) for a Hermitian p.
    double expectation(const PauliOperator &p) const;

    void apply_gate(const CliffordGate &g, std::span<const size_t> qubits);
    /// Local PTM on the listed qubits (digit j of the local index is qubits[j]).
    void apply_channel(const Matrix &ptm, std::span<const size_t> qubits);
    /// Global depolarizing with polarization gamma.
    void depolarize(double gamma);
    void apply_layer(const GateLayer &layer, const NoiseModel &noise, LayerRole role);

    /// Computational basis distribution, bit q of the outcome is qubit q.
    std::vector<double> z_distribution() const;

   private:
    size_t n_ = 0;
    std::vector<double> v_;
    std::vector<double> scratch_;
};

/// Exact <s_C> under the noise model.
double dense_expectation(const BirbCircuit &bc, const NoiseModel &noise);

/// Output distribution over bit strings. Negative entries above -1e-9 are
/// clipped silently; a warning is logged below -1e-6.
std::vector<double> dense_output_distribution(const BirbCircuit &bc, const NoiseModel &noise);

/// Draws N shots from a distribution and maps them through value(b).
std::vector<int> sample_shots(const BirbCircuit &bc, const std::vector<double> &distribution, uint64_t shots,
                              Rng &rng);

std::vector<int> dense_sample(const BirbCircuit &bc, const NoiseModel &noise, uint64_t shots, Rng &rng);

/// Full 4^n x 4^n PTM of one layer, n <= 3. With `noise` null the layer is ideal.
Matrix layer_ptm(const GateLayer &layer, const NoiseModel *noise, LayerRole role = LayerRole::Core);

/// Throws CapabilityError with a remediation hint above the dense cap.
void check_dense_capacity(size_t num_qubits);

}  // namespace birb
