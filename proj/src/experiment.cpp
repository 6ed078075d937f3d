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

#include "birb/experiment.hpp"

#include <algorithm>
#include <set>

#include "birb/dense_engine.hpp"
#include "birb/errors.hpp"
#include "birb/frame_engine.hpp"
#include "birb/parallel.hpp"

namespace birb {

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::Dense:
            return "dense";
        case Engine::DenseExact:
            return "dense-exact";
        default:
            return "frame";
    }
}

Engine parse_engine(const std::string &name) {
    if (name == "dense") {
        return Engine::Dense;
    }
    if (name == "dense-exact") {
        return Engine::DenseExact;
    }
    if (name == "frame") {
        return Engine::Frame;
    }
    throw ConfigError("engine: expected dense, dense-exact or frame, got '" + name + "'");
}

double DatasetRow::estimate() const {
    if (shots > 0) {
        return static_cast<double>(success_sum) / static_cast<double>(shots);
    }
    if (exact) {
        return *exact;
    }
    throw DomainError("dataset row " + std::to_string(id) + " has neither shots nor an exact value");
}

std::vector<size_t> Dataset::depths() const {
    std::set<size_t> s;
    for (const auto &r : rows) {
        s.insert(r.depth);
    }
    return {s.begin(), s.end()};
}

void check_engine(Engine engine, size_t num_qubits, const NoiseModel &noise) {
    if (noise.num_qubits() != num_qubits) {
        throw DimensionError("noise model is for n=" + std::to_string(noise.num_qubits()) + ", circuits have n=" +
                             std::to_string(num_qubits));
    }
    if (engine == Engine::Frame) {
        if (!noise.is_stochastic()) {
            throw DomainError(
                "frame engine needs stochastic Pauli gate noise and bitflip SPAM; use the dense engine");
        }
    } else {
        check_dense_capacity(num_qubits);
    }
}

DatasetRow run_circuit(const DesignedCircuit &dc, const NoiseModel &noise, const RunOptions &opts) {
    const BirbCircuit &bc = dc.circuit;
    DatasetRow row;
    row.id = dc.id;
    row.num_qubits = bc.num_qubits();
    row.depth = bc.benchmark_depth;
    row.target = bc.target;
    uint64_t block = std::max<uint64_t>(1, opts.block);
    switch (opts.engine) {
        case Engine::DenseExact:
            row.exact = dense_expectation(bc, noise);
            break;
        case Engine::Dense: {
            std::vector<double> dist = dense_output_distribution(bc, noise);
            row.exact = dense_expectation(bc, noise);
            row.shots = opts.shots;
            for (uint64_t b = 0; b * block < opts.shots; b++) {
                Rng rng = substream(opts.seed, "shots", {dc.id, b});
                uint64_t count = std::min(block, opts.shots - b * block);
                for (int v : sample_shots(bc, dist, count, rng)) {
                    row.success_sum += v;
                }
            }
            break;
        }
        case Engine::Frame: {
            FramePlan plan = frame_prepare(bc, noise);
            row.shots = opts.shots;
            for (uint64_t b = 0; b * block < opts.shots; b++) {
                Rng rng = substream(opts.seed, "shots", {dc.id, b});
                uint64_t count = std::min(block, opts.shots - b * block);
                row.success_sum += frame_run_sum(plan, count, rng);
            }
            break;
        }
    }
    return row;
}

Dataset run_circuits(const std::vector<DesignedCircuit> &circuits, const NoiseModel &noise, const RunOptions &opts) {
    Dataset ds;
    ds.seed = opts.seed;
    ds.engine = engine_name(opts.engine);
    if (circuits.empty()) {
        return ds;
    }
    ds.num_qubits = circuits.front().circuit.num_qubits();
    check_engine(opts.engine, ds.num_qubits, noise);
    ds.rows.resize(circuits.size());
    parallel_for(circuits.size(), opts.workers,
                 [&](size_t i) { ds.rows[i] = run_circuit(circuits[i], noise, opts); });
    return ds;
}

Dataset run_design(const ExperimentDesign &design, const NoiseModel &noise, const RunOptions &opts) {
    check_engine(opts.engine, design.num_qubits, noise);
    Dataset ds = run_circuits(generate_design(design), noise, opts);
    ds.num_qubits = design.num_qubits;
    return ds;
}

}  // namespace birb
