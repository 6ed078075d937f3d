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

#include <vector>

#include "birb/noise.hpp"
#include "birb/sampler.hpp"

namespace birb {

/// Per-circuit precomputation for Pauli-frame sampling: every noisy location
/// with the set of its local Pauli errors that anticommute with the target
/// propagated to that point.
struct FramePlan {
    struct Event {
        const std::vector<double> *cdf = nullptr;
        std::vector<uint8_t> flips;  // local Pauli index -> anticommutes
    };
    std::vector<Event> events;
    /// Core layers with global depolarizing, and its polarization.
    size_t depolarizing_layers = 0;
    double gamma = 1.0;
    /// Bitflip probabilities of SPAM locations that can flip the value.
    std::vector<double> spam_flips;

    /// Exact mean shot value implied by the plan.
    double expectation() const;
};

/// Throws DomainError for noise that is not stochastic Pauli with bitflip SPAM.
FramePlan frame_prepare(const BirbCircuit &bc, const NoiseModel &noise);

/// Sum of N shot values.
int64_t frame_run_sum(const FramePlan &plan, uint64_t shots, Rng &rng);

std::vector<int> frame_run(const BirbCircuit &bc, const NoiseModel &noise, uint64_t shots, Rng &rng);

}  // namespace birb
