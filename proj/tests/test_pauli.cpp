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

#include <map>

#include "birb/errors.hpp"
#include "birb/pauli.hpp"
#include "doctest.h"
#include "support/density_oracle.hpp"
#include "support/stats.hpp"

using namespace birb;

namespace {

PauliOperator P(const char *s) {
    return PauliOperator::from_str(s);
}

PauliOperator random_pauli_any_phase(size_t n, Rng &rng) {
    PauliOperator p = sample_any_pauli(n, rng);
    p.set_phase(static_cast<unsigned>(uniform_below(rng, 4)));
    return p;
}

}  // namespace

TEST_SUITE("pauli") {
    TEST_CASE("componentwise product on two qubits") {
        CHECK(multiply(P("+ZI"), P("+ZZ")) == P("+IZ"));
    }

    TEST_CASE("single qubit products carry the right phase") {
        PauliOperator xz = multiply(P("+X"), P("+Z"));
        CHECK(xz.unsigned_part() == P("+Y"));
        CHECK(xz.phase() == 3);  // XZ = -iY
        PauliOperator zx = multiply(P("+Z"), P("+X"));
        CHECK(zx.phase() == 1);
        CHECK(multiply(P("+Y"), P("+Y")).is_identity());
    }

    TEST_CASE("products match dense matrices") {
        Rng rng(7);
        for (int trial = 0; trial < 300; trial++) {
            size_t n = 1 + uniform_below(rng, 4);
            PauliOperator a = random_pauli_any_phase(n, rng);
            PauliOperator b = random_pauli_any_phase(n, rng);
            oracle::CM expect = oracle::pauli_of(a) * oracle::pauli_of(b);
            CHECK((oracle::pauli_of(multiply(a, b)) - expect).norm() < 1e-12);
            oracle::CM comm = oracle::pauli_of(a) * oracle::pauli_of(b) - oracle::pauli_of(b) * oracle::pauli_of(a);
            CHECK(commutes(a, b) == (comm.norm() < 1e-12));
        }
    }

    TEST_CASE("hermitian iff phase is real") {
        Rng rng(3);
        for (int trial = 0; trial < 100; trial++) {
            PauliOperator a = random_pauli_any_phase(3, rng);
            oracle::CM m = oracle::pauli_of(a);
            CHECK(a.is_hermitian() == ((m - m.adjoint()).norm() < 1e-12));
        }
    }

    TEST_CASE("text and index round trips") {
        Rng rng(11);
        for (int trial = 0; trial < 200; trial++) {
            size_t n = 1 + uniform_below(rng, 70);
            PauliOperator a = sample_any_pauli(n, rng);
            if (coin(rng)) {
                a = a.negated();
            }
            CHECK(PauliOperator::from_str(a.str()) == a);
            if (n <= 32) {
                CHECK(PauliOperator::from_index(n, a.index()).unsigned_part() == a.unsigned_part());
            }
        }
        CHECK(P("−XY") == P("-XY"));
        CHECK(P("+X_Z") == P("+XIZ"));
    }

    TEST_CASE("malformed text and mismatched sizes are rejected") {
        CHECK_THROWS_AS(PauliOperator::from_str("XZ"), ParseError);
        CHECK_THROWS_AS(PauliOperator::from_str("+XQ"), ParseError);
        CHECK_THROWS_AS(commutes(P("+X"), P("+XX")), DimensionError);
        CHECK_THROWS_AS(multiply(P("+X"), P("+XX")), DimensionError);
        Rng rng(1);
        CHECK_THROWS_AS(sample_random_pauli(0, rng), DomainError);
    }

    TEST_CASE("identity and weight helpers") {
        CHECK(P("+III").is_identity());
        CHECK(!P("-III").is_identity());
        CHECK(P("-III").is_identity_up_to_phase());
        CHECK(P("+XIY").weight() == 2);
        CHECK(P("+ZIZ").is_z_type());
        CHECK(!P("+ZXZ").is_z_type());
        CHECK(P("-ZX").sign() == -1);
    }

    TEST_CASE("random non-identity Paulis are uniform") {
        Rng rng(2024);
        std::vector<double> counts(16, 0);
        const int draws = 150000;
        for (int i = 0; i < draws; i++) {
            PauliOperator p = sample_random_pauli(2, rng);
            REQUIRE(!p.is_identity_up_to_phase());
            REQUIRE(p.phase() == 0);
            counts[p.index()]++;
        }
        CHECK(counts[0] == 0);
        std::vector<double> observed(counts.begin() + 1, counts.end());
        std::vector<double> expected(15, draws / 15.0);
        CHECK(teststats::chi_square_pvalue(observed, expected) > 1e-4);
    }

    TEST_CASE("index anticommutation helper agrees with commutes") {
        for (uint64_t a = 0; a < 64; a++) {
            for (uint64_t b = 0; b < 64; b++) {
                CHECK(indices_anticommute(a, b) ==
                      !commutes(PauliOperator::from_index(3, a), PauliOperator::from_index(3, b)));
            }
        }
    }
}
