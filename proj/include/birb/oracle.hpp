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

#include <string>
#include <vector>

#include "birb/fit.hpp"
#include "birb/noise.hpp"
#include "birb/sampler.hpp"

namespace birb {

/// Largest n for the Pauli-fidelity path (stochastic noise only).
constexpr size_t kOracleFastMaxQubits = 8;

/// Exact polarization of E_C = phi(C) U(C)^-1 for a core circuit: every
/// layer gets its gate errors and the per-layer depolarizing channel, no SPAM.
double circuit_polarization(const Circuit &core, const NoiseModel &noise);

struct OracleOptions {
    FitOptions fit;
    /// Bootstrap replicates for sigma; 0 skips.
    size_t bootstrap = 0;
    size_t workers = 1;
};

struct EpsilonOmegaEstimate {
    size_t num_qubits = 0;
    double epsilon = 0;
    double p_rc = 1;
    double A = 1;
    double B = 0;
    bool free_B = false;
    double sigma = 0;
    std::vector<DepthPoint> points;
    /// "pauli-fidelity" or "dense".
    std::string method;
};

/// Samples K core circuits per depth from Omega, computes their exact
/// polarizations and fits gamma_d = A p_rc^d (+ B).
EpsilonOmegaEstimate epsilon_omega_oracle(const OmegaSpec &spec, const NoiseModel &noise,
                                          const std::vector<size_t> &depths, size_t K, Rng &rng,
                                          const OracleOptions &opts = {});

}  // namespace birb
