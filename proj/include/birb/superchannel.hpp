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

#include <complex>
#include <vector>

#include "birb/noise.hpp"
#include "birb/sampler.hpp"

namespace birb {

struct WeightedLayer {
    GateLayer layer;
    double probability = 0;
};

/// Every layer the edgegrab sampler can emit for n <= 2, with its probability.
std::vector<WeightedLayer> enumerate_layers(const OmegaSpec &spec);

struct LSuperchannelReport {
    size_t num_qubits = 0;
    /// Sorted by decreasing modulus.
    std::vector<std::complex<double>> eigenvalues;
    /// Modulus of the second eigenvalue.
    double lambda = 0;
    size_t unit_eigenvalues = 0;
    bool monte_carlo = false;
    size_t samples = 0;
};

struct LSuperchannelOptions {
    /// > 0 replaces exact enumeration by this many sampled layers.
    size_t monte_carlo_samples = 0;
    /// |mu| within this of 1 counts as a unit eigenvalue.
    double unit_tolerance = 1e-10;
};

/// The 16^n x 16^n map M -> E_L U(L)^-1 M E_L U(L) on vectorized PTMs.
Matrix L_superchannel_matrix(const std::vector<WeightedLayer> &layers, const NoiseModel &noise);

LSuperchannelReport build_L_superchannel(const OmegaSpec &spec, const NoiseModel &noise, Rng &rng,
                                         const LSuperchannelOptions &opts = {});

}  // namespace birb
