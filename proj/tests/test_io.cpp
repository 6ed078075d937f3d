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

#include <sstream>

#include "birb/errors.hpp"
#include "birb/io.hpp"
#include "doctest.h"

using namespace birb;

namespace {

std::string error_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("design round trip and defaults") {
        Json j = Json::parse(R"({"n": 3, "depths": [0, 2, 8], "circuits_per_depth": 4, "seed": 11,
                                 "omega": {"xi": 0.5, "gate_set": {"connectivity": "line"}}})");
        ExperimentDesign d = design_from_json(j);
        CHECK(d.num_qubits == 3);
        CHECK(d.depths == std::vector<size_t>{0, 2, 8});
        CHECK(d.omega.xi == 0.5);
        CHECK(d.omega.gate_set.connectivity.size() == 2);
        CHECK(d.omega.gate_set.single_qubit_gates == std::vector<std::string>{"SX", "SY", "I"});
        ExperimentDesign back = design_from_json(design_to_json(d));
        CHECK(back.depths == d.depths);
        CHECK(back.omega.gate_set.connectivity == d.omega.gate_set.connectivity);
        CHECK(back.seed == 11);

        ExperimentDesign e = design_from_json(Json::parse(R"({"n": 1, "max_exponent": 3, "circuits_per_depth": 2})"));
        CHECK(e.depths == std::vector<size_t>{0, 1, 2, 4, 8});
        CHECK(e.omega.xi == 0);
        ExperimentDesign f = design_from_json(Json::parse(R"({"n": 2, "depths": [1], "circuits_per_depth": 2})"));
        CHECK(f.omega.xi == 0.25);
        CHECK(f.omega.gate_set.connectivity.size() == 1);
    }

    TEST_CASE("design errors name the field") {
        CHECK(error_of([] { design_from_json(Json::parse(R"({"depths": [1], "circuits_per_depth": 2})")); })
                  .starts_with("design.n"));
        CHECK(error_of([] { design_from_json(Json::parse(R"({"n": 2, "depths": [1], "circuits_per_depth": -2})")); })
                  .starts_with("design.circuits_per_depth"));
        CHECK(error_of([] {
                  design_from_json(Json::parse(R"({"n": 2, "depths": [1], "circuits_per_depth": 2, "omega": {"xi": "a"}})"));
              }).starts_with("design.omega.xi"));
        CHECK(error_of([] {
                  design_from_json(Json::parse(
                      R"({"n": 2, "depths": [1], "circuits_per_depth": 2, "omega": {"gate_set": {"connectivity": [[0, 7]]}}})"));
              }).find("connectivity") != std::string::npos);
        CHECK(error_of([] {
                  design_from_json(Json::parse(R"({"n": 2, "depths": [1], "circuits_per_depth": 2, "variant": "x"})"));
              }).starts_with("design.variant"));
        CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ConfigError);
    }

    TEST_CASE("noise round trip") {
        Json j = Json::parse(R"({
            "n": 2,
            "gates": [
                {"gate": "CNOT", "qubits": [0, 1], "generators": [
                    {"kind": "S", "paulis": "XZ", "rate": 0.01},
                    {"kind": "hamiltonian", "paulis": "IY", "rate": -0.02},
                    {"kind": "A", "paulis": ["XI", "YI"], "rate": 0.005}]},
                {"gate": "SX", "qubits": [1], "generators": [{"kind": "S", "paulis": "Z", "rate": 0.001}]}
            ],
            "layer_depolarizing": 0.99,
            "measurement": [{"qubit": 0, "kind": "bitflip", "p_m": 0.02}],
            "prep": [{"qubit": 1, "kind": "amplitude_damping", "p_m": 0.01}]
        })");
        NoiseModel m = noise_from_json(j);
        const GateNoiseEntry *e = m.gate_error("CNOT", {0, 1});
        REQUIRE(e != nullptr);
        REQUIRE(e->generators.size() == 3);
        // Letter j of a local Pauli refers to the j-th support qubit.
        CHECK(e->generators[0].p == local_pauli_index("XZ", 2, "x"));
        CHECK(local_pauli_text(e->generators[0].p, 2) == "XZ");
        CHECK(e->generators[1].rate == -0.02);
        CHECK(e->generators[2].kind == GeneratorKind::Active);
        CHECK(m.layer_depolarizing() == 0.99);
        CHECK(m.measurement(0) == SpamChannel{SpamKind::Bitflip, 0.02});
        CHECK(m.prep(1) == SpamChannel{SpamKind::AmplitudeDamping, 0.01});
        NoiseModel back = noise_from_json(noise_to_json(m));
        CHECK(noise_to_json(back) == noise_to_json(m));
        CHECK((back.gate_error("CNOT", {0, 1})->ptm - e->ptm).norm() == 0);
    }

    TEST_CASE("random noise specs are reproducible") {
        Json j = Json::parse(R"({"n": 2, "random": {"family": "both", "p": 0.01, "seed": 4}})");
        NoiseModel a = noise_from_json(j);
        NoiseModel b = noise_from_json(j);
        CHECK(noise_to_json(a) == noise_to_json(b));
        CHECK(a.gate_errors().size() == 6);
        j["random"]["seed"] = 5;
        CHECK_FALSE(noise_to_json(noise_from_json(j)) == noise_to_json(a));
    }

    TEST_CASE("noise errors") {
        CHECK(error_of([] {
                  noise_from_json(Json::parse(
                      R"({"n": 1, "gates": [{"gate": "SX", "qubits": [0], "generators": [{"kind": "S", "paulis": "XX", "rate": 0.1}]}]})"));
              }).starts_with("noise.gates[0].generators[0]"));
        CHECK(error_of([] {
                  noise_from_json(Json::parse(
                      R"({"n": 1, "gates": [{"gate": "SX", "qubits": [0], "generators": [{"kind": "S", "paulis": "I", "rate": 0.1}]}]})"));
              }).find("identity") != std::string::npos);
        CHECK(error_of([] {
                  noise_from_json(Json::parse(
                      R"({"n": 1, "gates": [{"gate": "SX", "qubits": [0], "generators": [{"kind": "S", "paulis": "X", "rate": -0.1}]}]})"));
              }).starts_with("noise.gates[0]"));
        CHECK(error_of([] { noise_from_json(Json::parse(R"({"n": 2, "gates": [{"gate": "FOO", "qubits": [0], "generators": []}]})")); })
                  .find("FOO") != std::string::npos);
        CHECK(error_of([] { noise_from_json(Json::parse(R"({"n": 2, "measurement": [{"qubit": 0, "kind": "x", "p_m": 0.1}]})")); })
                  .starts_with("noise.measurement[0].kind"));
        CHECK(error_of([] { noise_from_json(Json::parse(R"({"n": 2, "random": {"family": "both"}})")); })
                  .starts_with("noise.random.p"));
        CHECK(error_of([] { noise_from_json(Json::parse(R"({"n": 2, "layer_depolarizing": 2})")); })
                  .starts_with("noise.layer_depolarizing"));
    }

    TEST_CASE("circuit records round trip") {
        ExperimentDesign d;
        d.num_qubits = 3;
        d.depths = {0, 3};
        d.circuits_per_depth = 3;
        d.omega = OmegaSpec::standard(3, 0.25);
        d.seed = 8;
        for (BirbVariant v : {BirbVariant::Standard, BirbVariant::CliffordGroup}) {
            d.variant = v;
            for (const auto &dc : generate_design(d)) {
                Json j = circuit_to_json(dc, d.seed, variant_name(v));
                CHECK(j["schema_version"] == kSchemaVersion);
                DesignedCircuit back = circuit_from_json(Json::parse(j.dump()));
                CHECK(back.id == dc.id);
                CHECK(back.circuit.circuit == dc.circuit.circuit);
                CHECK(back.circuit.target == dc.circuit.target);
                CHECK(back.circuit.initial == dc.circuit.initial);
                CHECK(back.circuit.benchmark_depth == dc.circuit.benchmark_depth);
            }
        }
        Json j = circuit_to_json(generate_design(d)[0], 8, "birb");
        j["circuit"] = "n=3\nH(0);FOO(1)\n";
        CHECK(error_of([&] { circuit_from_json(j); }).find("line 2, column 6") != std::string::npos);
        j = circuit_to_json(generate_design(d)[0], 8, "birb");
        j["d"] = 5;
        CHECK_THROWS_AS(circuit_from_json(j), ConfigError);
        j = circuit_to_json(generate_design(d)[0], 8, "birb");
        j["target"] = "+ZZ";
        CHECK_THROWS_AS(circuit_from_json(j), ConfigError);
    }

    TEST_CASE("dataset round trip") {
        Dataset ds;
        ds.num_qubits = 2;
        ds.seed = 3;
        ds.engine = "dense";
        for (uint64_t i = 0; i < 5; i++) {
            DatasetRow r;
            r.id = i;
            r.num_qubits = 2;
            r.depth = i * 2;
            r.target = PauliOperator::from_str(i % 2 ? "-ZI" : "+ZZ");
            r.shots = 100;
            r.success_sum = static_cast<int64_t>(i * 10) - 20;
            if (i % 2) {
                r.exact = 0.1 * static_cast<double>(i);
            }
            ds.rows.push_back(r);
        }
        std::stringstream ss;
        write_dataset(ss, ds);
        std::string text = ss.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 5);
        std::stringstream in(text);
        Dataset back = read_dataset(in);
        REQUIRE(back.rows.size() == 5);
        CHECK(back.num_qubits == 2);
        for (size_t i = 0; i < 5; i++) {
            CHECK(back.rows[i].success_sum == ds.rows[i].success_sum);
            CHECK(back.rows[i].target == ds.rows[i].target);
            CHECK(back.rows[i].exact == ds.rows[i].exact);
            CHECK(back.rows[i].depth == ds.rows[i].depth);
        }
        std::stringstream empty("");
        CHECK(read_dataset(empty).rows.empty());
        std::stringstream bad(R"({"schema_version": "1.0.0", "id": 0, "n": 1, "d": 0, "target": "+Z", "N": 10, "success_sum": 20})");
        CHECK_THROWS_AS(read_dataset(bad), std::invalid_argument);
    }

    TEST_CASE("fit report") {
        std::vector<DepthPoint> pts = {{0, 0.98, 0.01, 10}, {4, 0.9, 0.01, 10}, {16, 0.7, 0.02, 10}};
        DecayFit f = fit_decay(pts, 2);
        Json j = fit_report_json(f, "ok");
        CHECK(j["n"] == 2);
        CHECK(j["fit_status"] == "ok");
        CHECK(j["convention"] == "entanglement");
        CHECK(j["depths"].size() == 3);
        CHECK(j.contains("sigma"));
        std::string csv = fit_csv(f);
        CHECK(csv.starts_with("d,fbar,sigma,count\n0,"));
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    }
}
