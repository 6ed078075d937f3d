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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "birb/experiment.hpp"
#include "birb/fit.hpp"
#include "birb/noise.hpp"
#include "birb/oracle.hpp"
#include "birb/sampler.hpp"
#include "birb/superchannel.hpp"
#include "json.hpp"

namespace birb {

using Json = nlohmann::ordered_json;

/// Version written into every artifact.
inline constexpr const char *kSchemaVersion = "1.0.0";

/// Field access with "path.to.field" diagnostics; all throw ConfigError.
namespace cfg {
const Json &require(const Json &obj, const std::string &key, const std::string &path);
uint64_t get_uint(const Json &v, const std::string &path);
double get_double(const Json &v, const std::string &path);
std::string get_string(const Json &v, const std::string &path);
bool get_bool(const Json &v, const std::string &path);
}  // namespace cfg

Json read_json_file(const std::string &path);

GateSetSpec gate_set_from_json(const Json &j, size_t n, const std::string &path);
Json gate_set_to_json(const GateSetSpec &g);
OmegaSpec omega_from_json(const Json &j, size_t n, const std::string &path);
Json omega_to_json(const OmegaSpec &o);

/// {n, depths | max_exponent, circuits_per_depth, seed, variant, omega}.
ExperimentDesign design_from_json(const Json &j, const std::string &path = "design");
Json design_to_json(const ExperimentDesign &d);

/// Explicit model {n, gates, layer_depolarizing, measurement, prep} or a
/// random family {n, random: {family, p, seed, ...}, gate_set?}.
NoiseModel noise_from_json(const Json &j, const std::string &path = "noise");
Json noise_to_json(const NoiseModel &m);

/// Local Pauli text ("XZ", character j is support qubit j) to local index.
uint64_t local_pauli_index(const std::string &text, size_t k, const std::string &path);
std::string local_pauli_text(uint64_t index, size_t k);

/// One circuits-JSONL record.
Json circuit_to_json(const DesignedCircuit &dc, uint64_t seed, const std::string &variant);
DesignedCircuit circuit_from_json(const Json &j, const std::string &path = "circuit");

/// One dataset-JSONL record {schema_version, id, n, d, target, N, success_sum, exact?}.
Json row_to_json(const DatasetRow &row, uint64_t seed, const std::string &engine);
DatasetRow row_from_json(const Json &j, const std::string &path = "row");

/// Reads a dataset JSONL stream; blank lines are skipped.
Dataset read_dataset(std::istream &in);
void write_dataset(std::ostream &out, const Dataset &ds);

Json fit_report_json(const DecayFit &fit, const std::string &status);
/// "d,fbar,sigma,count" rows.
std::string fit_csv(const DecayFit &fit);

Json oracle_to_json(const EpsilonOmegaEstimate &e);
Json lspec_to_json(const LSuperchannelReport &r);
Json scrambling_to_json(const ScramblingReport &r);

}  // namespace birb
