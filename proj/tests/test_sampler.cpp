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

#include <cmath>

#include "birb/errors.hpp"
#include "birb/noise.hpp"
#include "birb/sampler.hpp"
#include "doctest.h"
#include "support/density_oracle.hpp"
#include "support/stats.hpp"

using namespace birb;

namespace {

double ideal_value(const BirbCircuit &bc) {
    NoiseModel ideal(bc.num_qubits());
    return oracle::DensitySim(ideal).expectation(bc);
}

size_t two_qubit_count(const GateLayer &layer) {
    size_t c = 0;
    for (const auto &g : layer.gates()) {
        c += g.qubits.size() == 2;
    }
    return c;
}

}  // namespace

TEST_SUITE("sampler") {
    TEST_CASE("edgegrab layers hit the requested two-qubit density") {
        for (auto [n, xi] : std::vector<std::pair<size_t, double>>{{2, 0.25}, {4, 0.5}, {6, 0.25}, {5, 0.8}}) {
            OmegaSpec spec = OmegaSpec::standard(n, xi);
            CHECK(spec.validate().empty());
            Rng rng(n * 100 + 7);
            const int layers = 20000;
            std::vector<double> counts;
            for (int i = 0; i < layers; i++) {
                GateLayer layer = sample_omega_layer(spec, rng);
                size_t covered = 0;
                for (const auto &g : layer.gates()) {
                    covered += g.qubits.size();
                }
                CHECK(covered == n);
                counts.push_back(static_cast<double>(two_qubit_count(layer)));
            }
            double m = teststats::mean(counts);
            double se = teststats::stddev(counts) / std::sqrt(static_cast<double>(layers));
            CAPTURE(n);
            CHECK(std::abs(2 * m / n - xi) < 5 * 2 * se / n + 1e-12);
        }
    }

    TEST_CASE("edgegrab on line connectivity") {
        for (size_t n : {4, 8, 16}) {
            OmegaSpec spec = OmegaSpec::standard(n, 0.25);
            spec.gate_set.connectivity = GateSetSpec::line(n);
            Rng rng(n);
            const int layers = 10000;
            std::vector<double> counts;
            for (int i = 0; i < layers; i++) {
                GateLayer layer = sample_omega_layer(spec, rng);
                for (const auto &g : layer.gates()) {
                    if (g.qubits.size() == 2) {
                        CHECK((g.qubits[0] + 1 == g.qubits[1] || g.qubits[1] + 1 == g.qubits[0]));
                    }
                }
                counts.push_back(static_cast<double>(two_qubit_count(layer)));
            }
            double m = teststats::mean(counts);
            double se = teststats::stddev(counts) / std::sqrt(static_cast<double>(layers));
            CHECK(std::abs(m - 0.25 * n / 2) < 3 * se);
        }
    }

    TEST_CASE("extreme densities") {
        Rng rng(1);
        OmegaSpec none = OmegaSpec::standard(4, 0);
        OmegaSpec full = OmegaSpec::standard(2, 1);
        for (int i = 0; i < 200; i++) {
            CHECK(two_qubit_count(sample_omega_layer(none, rng)) == 0);
            CHECK(two_qubit_count(sample_omega_layer(full, rng)) == 1);
        }
    }

    TEST_CASE("both CNOT orientations and all single-qubit gates appear") {
        OmegaSpec spec = OmegaSpec::standard(2, 0.5);
        Rng rng(4);
        std::map<std::string, int> seen;
        for (int i = 0; i < 2000; i++) {
            seen[sample_omega_layer(spec, rng).str()]++;
        }
        CHECK(seen.count("CNOT(0,1)") == 1);
        CHECK(seen.count("CNOT(1,0)") == 1);
        // 9 single-qubit pairs plus two CNOTs.
        CHECK(seen.size() == 11);
    }

    TEST_CASE("omega configuration errors") {
        OmegaSpec spec = OmegaSpec::standard(3, 0.25);
        spec.xi = 1.5;
        CHECK_THROWS_AS(spec.validate(), ConfigError);
        spec.xi = 0.25;
        spec.gate_set.connectivity.clear();
        CHECK_THROWS_AS(spec.validate(), ConfigError);
        spec.xi = 0;
        CHECK_NOTHROW(spec.validate());
        spec = OmegaSpec::standard(0, 0);
        CHECK_THROWS_AS(spec.validate(), ConfigError);
        spec = OmegaSpec::standard(4, 1.0);
        spec.gate_set.connectivity = {{0, 1}};
        CHECK_FALSE(spec.validate().empty());
    }

    TEST_CASE("prep layer prepares a +1 eigenstate of s") {
        Rng rng(12);
        for (int trial = 0; trial < 200; trial++) {
            size_t n = 1 + uniform_below(rng, 4);
            PauliOperator s = sample_random_pauli(n, rng);
            if (coin(rng)) {
                s = s.negated();
            }
            Circuit c(n);
            c.append(prep_layer(s, rng));
            NoiseModel ideal(n);
            oracle::CM rho = oracle::DensitySim(ideal).run(c, false, oracle::DensitySim::zero_state(n));
            CHECK(std::abs((oracle::pauli_of(s) * rho).trace().real() - 1) < 1e-9);
        }
        CHECK_THROWS_AS(prep_layer(PauliOperator(2), rng), DomainError);
        PauliOperator anti = PauliOperator::from_str("+XZ");
        anti.set_phase(1);
        CHECK_THROWS_AS(prep_layer(anti, rng), DomainError);
        CHECK_THROWS_AS(prep_gate(Pauli1::I, false), DomainError);
    }

    TEST_CASE("prep signs on the support are uniform over even parities") {
        Rng rng(99);
        PauliOperator s = PauliOperator::from_str("+XYZ");
        std::map<std::string, double> seen;
        const int draws = 8000;
        for (int i = 0; i < draws; i++) {
            seen[prep_layer(s, rng).str()]++;
        }
        CHECK(seen.size() == 4);
        std::vector<double> obs, expect;
        for (const auto &[k, v] : seen) {
            obs.push_back(v);
            expect.push_back(draws / 4.0);
        }
        CHECK(teststats::chi_square_pvalue(obs, expect) > 1e-4);
    }

    TEST_CASE("small preparation cases") {
        Rng rng(8);
        CHECK(prep_layer(PauliOperator::from_str("+Z"), rng).str() == "C1_0(0)");
        CHECK(prep_layer(PauliOperator::from_str("-Z"), rng).str() == "C1_1(0)");
        std::map<std::string, int> nzz;
        for (int i = 0; i < 200; i++) {
            nzz[prep_layer(PauliOperator::from_str("-ZZ"), rng).str()]++;
        }
        // |01> and |10>.
        CHECK(nzz.size() == 2);
        CHECK(nzz.count("C1_0(0);C1_1(1)") == 1);
        std::map<std::string, int> zz;
        std::map<std::string, int> xi;
        for (int i = 0; i < 3000; i++) {
            zz[prep_layer(PauliOperator::from_str("+ZZ"), rng).str()]++;
            xi[prep_layer(PauliOperator::from_str("+XI"), rng).str()]++;
        }
        // |00> and |11>.
        CHECK(zz.size() == 2);
        CHECK(zz.count("C1_0(0);C1_0(1)") == 1);
        CHECK(zz.count("C1_1(0);C1_1(1)") == 1);
        CHECK(xi.size() == 6);
        for (const auto &[k, v] : xi) {
            CHECK(k.starts_with("C1_16(0);"));
            CHECK(std::abs(v - 500) < 5 * std::sqrt(500.0));
        }
    }

    TEST_CASE("ideal outcomes are randomized at every depth") {
        Rng rng(31);
        OmegaSpec spec = OmegaSpec::standard(2, 0.5);
        for (size_t d : {0, 1, 3}) {
            int sum = 0;
            const int draws = 4000;
            for (int i = 0; i < draws; i++) {
                sum += build_birb_circuit(2, d, spec, rng).target.sign();
            }
            CHECK(std::abs(sum) < 4 * std::sqrt(static_cast<double>(draws)));
        }
    }

    TEST_CASE("measurement layer rule table") {
        CHECK(measurement_layer(PauliOperator::from_str("+X")).str() == "H(0)");
        CHECK(measurement_layer(PauliOperator::from_str("+YZ")).str() == "HSDG(0);I(1)");
        PauliOperator t = PauliOperator::from_str("+YZ");
        measurement_layer(t).conjugate_inplace(t);
        CHECK(t == PauliOperator::from_str("+ZZ"));
        t = PauliOperator::from_str("+X");
        measurement_layer(t).conjugate_inplace(t);
        CHECK(t == PauliOperator::from_str("+Z"));
    }

    TEST_CASE("measurement layer rotates the target to a Z-type Pauli") {
        Rng rng(5);
        for (int trial = 0; trial < 100; trial++) {
            PauliOperator p = sample_random_pauli(5, rng);
            if (coin(rng)) {
                p = p.negated();
            }
            PauliOperator q = p;
            measurement_layer(p).conjugate_inplace(q);
            CHECK(q.is_z_type());
            CHECK(q.sign() == p.sign());
            CHECK(q.weight() == p.weight());
        }
    }

    TEST_CASE("noise-free circuits return +1") {
        Rng rng(2024);
        for (int trial = 0; trial < 60; trial++) {
            size_t n = 1 + uniform_below(rng, 4);
            size_t d = uniform_below(rng, 8);
            BirbCircuit bc = build_birb_circuit(n, d, OmegaSpec::standard(n, n == 1 ? 0 : 0.5), rng);
            CHECK(bc.circuit.depth() == d + 2);
            CHECK(bc.core().depth() == d);
            CHECK(bc.target.is_z_type());
            CHECK(std::abs(ideal_value(bc) - 1) < 1e-9);
        }
    }

    TEST_CASE("value reads the target parity") {
        Rng rng(1);
        BirbCircuit bc = build_birb_circuit(3, 2, OmegaSpec::standard(3, 0.25), rng);
        bc.target = PauliOperator::from_str("-ZIZ");
        std::vector<uint64_t> bits = {0b001};
        CHECK(bc.value(bits) == 1);
        bits = {0b101};
        CHECK(bc.value(bits) == -1);
        bits = {0b010};
        CHECK(bc.value(bits) == -1);
    }

    TEST_CASE("clifford-group variant") {
        Rng rng(17);
        for (int trial = 0; trial < 20; trial++) {
            size_t n = 1 + uniform_below(rng, 3);
            BirbCircuit bc = build_clifford_group_birb_circuit(n, 3, rng);
            CHECK(bc.circuit.depth() == 5);
            CHECK(bc.circuit.layer(1).gates().front().gate.noise_key() == "TABLEAU");
            CHECK(std::abs(ideal_value(bc) - 1) < 1e-9);
        }
        CHECK_THROWS_AS(build_clifford_group_birb_circuit(9, 1, rng), CapabilityError);
    }

    TEST_CASE("designs are deterministic and keyed by depth and index") {
        ExperimentDesign design;
        design.num_qubits = 3;
        design.depths = {0, 2, 4};
        design.circuits_per_depth = 5;
        design.omega = OmegaSpec::standard(3, 0.25);
        design.seed = 42;
        auto a = generate_design(design);
        auto b = generate_design(design);
        REQUIRE(a.size() == 15);
        for (size_t i = 0; i < a.size(); i++) {
            CHECK(a[i].id == i);
            CHECK(a[i].circuit.circuit == b[i].circuit.circuit);
            CHECK(a[i].circuit.target == b[i].circuit.target);
        }
        ExperimentDesign sub = design;
        sub.depths = {4};
        auto c = generate_design(sub);
        CHECK(c[2].circuit.circuit == a[12].circuit.circuit);
        design.seed = 43;
        CHECK_FALSE(generate_design(design)[14].circuit.circuit == a[14].circuit.circuit);
        design.omega = OmegaSpec::standard(2, 0.25);
        CHECK_THROWS_AS(generate_design(design), ConfigError);
        CHECK(power_of_two_depths(3) == std::vector<size_t>{0, 1, 2, 4, 8});
        CHECK(power_of_two_depths(3, false) == std::vector<size_t>{0, 2, 4, 8});
        CHECK(parse_variant(variant_name(BirbVariant::CliffordGroup)) == BirbVariant::CliffordGroup);
        CHECK_THROWS_AS(parse_variant("rb"), ConfigError);
    }

    TEST_CASE("scrambling estimate decreases with layer count") {
        OmegaSpec spec = OmegaSpec::standard(2, 0.5);
        Rng rng(6);
        ScramblingReport none = estimate_scrambling(spec, 0, 0, 20, 0, rng);
        CHECK(none.delta_hat == doctest::Approx(1 - 1.0 / 16));
        CHECK(none.pairs.size() == 225);
        for (const auto &pair : none.pairs) {
            if (pair.p == pair.p_prime) {
                CHECK(pair.estimate == 1);
            } else {
                CHECK(pair.estimate == 0);
            }
        }
        // X on a qubit is left alone by SX and by a CNOT control, so this gate
        // set needs a dozen layers before the pair map looks uniform.
        double prev = 1;
        for (size_t k : {4, 8, 12, 16}) {
            ScramblingReport r = estimate_scrambling(OmegaSpec::standard(2, 0.5), k, 0, 20000, 0, rng);
            MESSAGE("k=" << k << " delta_hat=" << r.delta_hat);
            CHECK(r.delta_hat < prev);
            prev = r.delta_hat;
            if (k >= 12) {
                CHECK(r.delta_hat <= 0.05);
            }
        }
        ScramblingReport sampled = estimate_scrambling(spec, 12, 30, 100, 50, rng);
        CHECK(sampled.pairs.size() == 30);
        CHECK_THROWS_AS(estimate_scrambling(spec, 1, 1, 0, 1, rng), DomainError);
        CHECK_THROWS_AS(estimate_scrambling(OmegaSpec::standard(5, 0.25), 1, 0, 1, 1, rng), CapabilityError);
    }
}
