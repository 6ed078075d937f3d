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

#include "birb/circuit.hpp"
#include "birb/errors.hpp"
#include "birb/sampler.hpp"
#include "doctest.h"
#include "support/density_oracle.hpp"

using namespace birb;

namespace {

Circuit random_circuit(size_t n, size_t depth, Rng &rng, bool tableaus = false) {
    Circuit c(n);
    for (size_t t = 0; t < depth; t++) {
        GateLayer layer(n);
        std::vector<bool> used(n, false);
        for (size_t q = 0; q < n; q++) {
            if (used[q]) {
                continue;
            }
            size_t pick = uniform_below(rng, 4);
            if (pick == 0 && q + 1 < n && !used[q + 1]) {
                bool flip = coin(rng);
                layer.add(CliffordGate::from_name("CNOT"), flip ? std::vector<size_t>{q + 1, q} : std::vector<size_t>{q, q + 1});
                used[q] = used[q + 1] = true;
            } else if (pick == 1 && tableaus && q + 1 < n && !used[q + 1]) {
                layer.add(CliffordGate::tableau(sample_uniform_clifford(2, rng)), {q, q + 1});
                used[q] = used[q + 1] = true;
            } else if (pick == 2) {
                continue;
            } else {
                layer.add(CliffordGate::c1(static_cast<unsigned>(uniform_below(rng, 24))), {q});
                used[q] = true;
            }
        }
        c.append(layer);
    }
    return c;
}

}  // namespace

TEST_SUITE("circuit") {
    TEST_CASE("serialize then parse is the identity") {
        Rng rng(21);
        for (int trial = 0; trial < 200; trial++) {
            size_t n = 1 + uniform_below(rng, 6);
            Circuit c = random_circuit(n, uniform_below(rng, 6), rng, true);
            std::string text = c.serialize();
            CHECK(Circuit::parse(text) == c);
            CHECK(Circuit::parse(text).serialize() == text);
        }
    }

    TEST_CASE("text format") {
        Circuit c(3);
        GateLayer a(3);
        a.add(CliffordGate::from_name("H"), {0});
        a.add(CliffordGate::from_name("CNOT"), {1, 2});
        c.append(a);
        c.append(GateLayer(3));
        CHECK(c.serialize() == "n=3\nH(0);CNOT(1,2)\n\n");
        CHECK(Circuit::parse("n=3\n H(0) ; CNOT( 1 , 2 )\n\n") == c);
        CHECK(depth(c) == 2);
        CHECK(qubit_count(c) == 3);
    }

    TEST_CASE("parse errors carry line and column") {
        auto where = [](const char *text) -> std::pair<size_t, size_t> {
            try {
                Circuit::parse(text);
            } catch (const ParseError &e) {
                return {e.line, e.column};
            }
            return {0, 0};
        };
        CHECK(where("H(0)\n") == std::pair<size_t, size_t>{1, 1});
        CHECK(where("n=x\n") == std::pair<size_t, size_t>{1, 3});
        CHECK(where("n=2\nH(0);FOO(1)\n") == std::pair<size_t, size_t>{2, 6});
        CHECK(where("n=2\nH(0)\nH(0);SX(0)\n") == std::pair<size_t, size_t>{3, 6});
        CHECK(where("n=2\nH(5)\n") == std::pair<size_t, size_t>{2, 1});
        CHECK(where("n=2\nCNOT(0)\n") == std::pair<size_t, size_t>{2, 1});
        CHECK(where("n=2\nH(0) SX(1)\n") == std::pair<size_t, size_t>{2, 6});
        CHECK(where("n=2\nH(a)\n") == std::pair<size_t, size_t>{2, 3});
    }

    TEST_CASE("layers reject overlapping or out-of-range supports") {
        GateLayer layer(3);
        layer.add(CliffordGate::from_name("CNOT"), {0, 1});
        CHECK_THROWS_AS(layer.add(CliffordGate::from_name("H"), {1}), DomainError);
        CHECK_THROWS_AS(layer.add(CliffordGate::from_name("H"), {3}), DomainError);
        CHECK_THROWS_AS(layer.add(CliffordGate::from_name("CNOT"), {2, 2}), DomainError);
        CHECK_THROWS_AS(GateLayer(2, {{CliffordGate::from_name("H"), {0}}, {CliffordGate::from_name("S"), {0}}}),
                        DomainError);
        Circuit c(2);
        CHECK_THROWS_AS(c.append(GateLayer(3)), DimensionError);
    }

    TEST_CASE("conjugation matches the circuit unitary") {
        Rng rng(8);
        for (int trial = 0; trial < 60; trial++) {
            size_t n = 1 + uniform_below(rng, 4);
            Circuit c = random_circuit(n, 1 + uniform_below(rng, 5), rng);
            PauliOperator p = sample_any_pauli(n, rng);
            oracle::CM U = oracle::circuit_unitary(c);
            oracle::CM expect = U * oracle::pauli_of(p) * U.adjoint();
            CHECK((oracle::pauli_of(conjugate_by_circuit(p, c)) - expect).norm() < 1e-9);
        }
    }

    TEST_CASE("inverse and composition") {
        Rng rng(3);
        for (int trial = 0; trial < 100; trial++) {
            size_t n = 1 + uniform_below(rng, 5);
            Circuit a = random_circuit(n, 1 + uniform_below(rng, 4), rng, true);
            Circuit b = random_circuit(n, 1 + uniform_below(rng, 4), rng, true);
            PauliOperator p = sample_any_pauli(n, rng);
            CHECK(conjugate_by_circuit(conjugate_by_circuit(p, a), a.inverse()) == p);
            Circuit ab = compose(a, b);
            CHECK(ab.depth() == a.depth() + b.depth());
            CHECK(conjugate_by_circuit(p, ab) == conjugate_by_circuit(conjugate_by_circuit(p, a), b));
        }
        CHECK_THROWS_AS(compose(Circuit(2), Circuit(3)), DimensionError);
        CHECK_THROWS_AS(conjugate_by_circuit(PauliOperator(2), Circuit(3)), DimensionError);
    }

    TEST_CASE("gate set validation") {
        GateSetSpec gs{{"SX", "SY", "I"}, "CNOT", GateSetSpec::all_to_all(3)};
        CHECK_NOTHROW(gs.validate(3));
        CHECK(GateSetSpec::all_to_all(3).size() == 3);
        CHECK(GateSetSpec::line(4).size() == 3);
        auto bad = gs;
        bad.single_qubit_gates.push_back("T");
        CHECK_THROWS_AS(bad.validate(3), ConfigError);
        bad = gs;
        bad.single_qubit_gates = {"CNOT"};
        CHECK_THROWS_AS(bad.validate(3), ConfigError);
        bad = gs;
        bad.two_qubit_gate = "H";
        CHECK_THROWS_AS(bad.validate(3), ConfigError);
        bad = gs;
        bad.connectivity = {{0, 0}};
        CHECK_THROWS_AS(bad.validate(3), ConfigError);
        bad.connectivity = {{0, 5}};
        CHECK_THROWS_AS(bad.validate(3), ConfigError);
    }
}
