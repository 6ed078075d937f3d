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

#include <optional>
#include <string>
#include <vector>

#include "birb/noise.hpp"
#include "birb/sampler.hpp"

namespace birb {

enum class Engine { Dense, DenseExact, Frame };
std::string engine_name(Engine e);
Engine parse_engine(const std::string &name);

struct DatasetRow {
    uint64_t id = 0;
    size_t num_qubits = 0;
    size_t depth = 0;
    PauliOperator target;
    uint64_t shots = 0;
    int64_t success_sum = 0;
    std::optional<double> exact;

    /// success_sum / shots, or the exact value when no shots were taken.
    double estimate() const;
};

struct Dataset {
    size_t num_qubits = 0;
    uint64_t seed = 0;
    std::string engine;
    std::vector<DatasetRow> rows;

    std::vector<size_t> depths() const;
};

struct RunOptions {
    Engine engine = Engine::Dense;
    uint64_t shots = 1000;
    uint64_t seed = 0;
    size_t workers = 1;
    /// Shots per RNG substream.
    uint64_t block = 4096;
};

/// Checks engine/noise/size compatibility; throws CapabilityError or DomainError.
void check_engine(Engine engine, size_t num_qubits, const NoiseModel &noise);

/// Runs one circuit. Shot block b of circuit `id` draws from substream
/// (seed, id, b), so results do not depend on the worker count.
DatasetRow run_circuit(const DesignedCircuit &dc, const NoiseModel &noise, const RunOptions &opts);

Dataset run_circuits(const std::vector<DesignedCircuit> &circuits, const NoiseModel &noise, const RunOptions &opts);

/// Generates the design's circuits and runs them.
Dataset run_design(const ExperimentDesign &design, const NoiseModel &noise, const RunOptions &opts);

}  // namespace birb
