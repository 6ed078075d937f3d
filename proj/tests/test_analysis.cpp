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
#include <random>

#include "birb/dense_engine.hpp"
#include "birb/errors.hpp"
#include "birb/fit.hpp"
#include "birb/oracle.hpp"
#include "birb/planner.hpp"
#include "birb/superchannel.hpp"
#include "doctest.h"
#include "support/stats.hpp"

using namespace birb;

namespace {

std::vector<DepthPoint> exact_points(double A, double p, const std::vector<size_t> &depths, double B = 0) {
    std::vector<DepthPoint> pts;
    for (size_t d : depths) {
        pts.push_back({d, A * std::pow(p, static_cast<double>(d)) + B, 0, 1});
    }
    return pts;
}

// K circuits per depth whose true values scatter around A p^d, each sampled
// with N binomial shots.
Dataset synthetic(size_t n, double A, double p, const std::vector<size_t> &depths, size_t K, uint64_t N,
                  double scatter, Rng &rng) {
    Dataset ds;
    ds.num_qubits = n;
    std::normal_distribution<double> gauss(0, scatter);
    uint64_t id = 0;
    for (size_t d : depths) {
        for (size_t k = 0; k < K; k++) {
            double mean = std::clamp(A * std::pow(p, static_cast<double>(d)) + gauss(rng), -1.0, 1.0);
            std::binomial_distribution<uint64_t> shots(N, (1 + mean) / 2);
            uint64_t plus = shots(rng);
            DatasetRow row;
            row.id = id++;
            row.num_qubits = n;
            row.depth = d;
            row.target = PauliOperator::from_str("+" + std::string(n, 'Z'));
            row.shots = N;
            row.success_sum = 2 * static_cast<int64_t>(plus) - static_cast<int64_t>(N);
            ds.rows.push_back(row);
        }
    }
    return ds;
}

const std::vector<size_t> kDepths = {0, 1, 2, 4, 8, 16, 32, 64};

}  // namespace

TEST_SUITE("analysis") {
    TEST_CASE("fit recovers an exact exponential") {
        DecayFit f = fit_decay(exact_points(0.98, 0.95, kDepths), 2);
        CHECK(std::abs(f.A - 0.98) < 1e-10);
        CHECK(std::abs(f.p - 0.95) < 1e-10);
        CHECK(f.r_omega == doctest::Approx(15.0 / 16 * 0.05));
        CHECK_FALSE(f.weighted);
        for (double r : f.residuals) {
            CHECK(std::abs(r) < 1e-10);
        }
        FitOptions freeb;
        freeb.free_B = true;
        DecayFit g = fit_decay(exact_points(0.7, 0.9, kDepths, 0.05), 1, freeb);
        CHECK(std::abs(g.A - 0.7) < 1e-8);
        CHECK(std::abs(g.p - 0.9) < 1e-8);
        CHECK(std::abs(g.B - 0.05) < 1e-8);
    }

    TEST_CASE("constant data gives p = 1") {
        DecayFit f = fit_decay(exact_points(1, 1, kDepths), 3);
        CHECK(f.p == doctest::Approx(1));
        CHECK(f.r_omega == doctest::Approx(0).epsilon(1e-12));
    }

    TEST_CASE("fit failures") {
        CHECK_THROWS_AS(fit_decay(exact_points(1, 0.9, {0}), 1), FitError);
        CHECK_THROWS_AS(fit_decay(exact_points(1, 0.9, {4, 4, 4}), 1), FitError);
        CHECK_THROWS_AS(fit_decay(exact_points(-0.5, 0.9, kDepths), 1), FitError);
        // A far above its bound.
        CHECK_THROWS_AS(fit_decay(exact_points(1.5, 0.9, kDepths), 1), FitError);
        // Pure noise around zero.
        std::vector<DepthPoint> zeros = exact_points(0, 0.5, kDepths);
        zeros[0].f = 1;
        CHECK_THROWS_AS(fit_decay(zeros, 1), FitError);
    }

    TEST_CASE("weighted fits use the per-depth errors") {
        auto pts = exact_points(0.9, 0.97, kDepths);
        for (auto &pt : pts) {
            pt.sigma = 0.01;
        }
        pts[3].f += 0.05;
        pts[3].sigma = 1.0;
        CHECK_FALSE(fit_decay(pts, 1).weighted);
        FitOptions weighted;
        weighted.weighting = Weighting::Weighted;
        DecayFit w = fit_decay(pts, 1, weighted);
        CHECK(w.weighted);
        FitOptions unweighted;
        unweighted.weighting = Weighting::Unweighted;
        DecayFit u = fit_decay(pts, 1, unweighted);
        CHECK(std::abs(w.p - 0.97) < std::abs(u.p - 0.97));
        CHECK(parse_weighting(weighting_name(Weighting::Weighted)) == Weighting::Weighted);
        CHECK_THROWS_AS(parse_weighting("heavy"), ConfigError);
    }

    TEST_CASE("r_omega conventions") {
        CHECK(r_omega(1, 3) == 0);
        CHECK(r_omega(0.9, 2) == doctest::Approx(0.09375));
        CHECK(r_omega(0.96, 1, RConvention::AverageGate) == doctest::Approx(0.02));
        double r = r_omega(0.9, 2);
        CHECK(r_per_qubit(r, 2) == doctest::Approx(1 - std::sqrt(1 - r)));
        CHECK(parse_convention(convention_name(RConvention::AverageGate)) == RConvention::AverageGate);
        CHECK_THROWS_AS(parse_convention("fidelity"), ConfigError);
    }

    TEST_CASE("fbar averages circuit estimates") {
        Dataset ds;
        ds.num_qubits = 1;
        DatasetRow a;
        a.depth = 3;
        a.shots = 10;
        a.success_sum = 6;  // 0.6
        DatasetRow b = a;
        b.success_sum = 10;
        DatasetRow c = a;
        c.depth = 5;
        c.shots = 0;
        c.exact = 0.8;
        ds.rows = {a, b, c};
        CHECK(fbar(ds, 3) == doctest::Approx(0.8));
        CHECK(fbar(ds, 5) == doctest::Approx(0.8));
        CHECK_THROWS_AS(fbar(ds, 4), DomainError);
        a.success_sum = 8;
        b.success_sum = 6;
        ds.rows = {a, b};
        CHECK(fbar(ds, 3) == doctest::Approx(0.7));
    }

    TEST_CASE("fbar of exact depolarizing data") {
        ExperimentDesign design;
        design.num_qubits = 2;
        design.depths = {2};
        design.circuits_per_depth = 5;
        design.omega = OmegaSpec::standard(2, 0.25);
        NoiseModel m(2);
        m.set_layer_depolarizing(0.9);
        RunOptions opts;
        opts.engine = Engine::DenseExact;
        CHECK(fbar(run_design(design, m, opts), 2) == doctest::Approx(0.81).epsilon(1e-12));
    }

    TEST_CASE("bootstrap on zero-variance data") {
        Dataset ds;
        ds.num_qubits = 1;
        for (size_t d : kDepths) {
            for (int k = 0; k < 5; k++) {
                DatasetRow row;
                row.depth = d;
                row.exact = std::pow(0.95, static_cast<double>(d));
                ds.rows.push_back(row);
            }
        }
        Rng rng(1);
        BootstrapResult b = bootstrap(ds, 200, rng);
        CHECK(b.replicates == 200);
        CHECK(b.failures == 0);
        CHECK(b.sigma_p < 1e-10);
        CHECK(b.sigma_A < 1e-10);
    }

    TEST_CASE("bootstrap sigma scales as one over root K") {
        Rng rng(2);
        std::vector<double> ratios;
        for (int rep = 0; rep < 6; rep++) {
            Dataset small = synthetic(2, 0.95, 0.98, kDepths, 40, 1000, 0.03, rng);
            Dataset large = synthetic(2, 0.95, 0.98, kDepths, 160, 1000, 0.03, rng);
            Rng b1(rep), b2(rep + 100);
            double s = bootstrap(small, 400, b1).sigma_p;
            double l = bootstrap(large, 400, b2).sigma_p;
            ratios.push_back(s / l);
        }
        double mean = teststats::mean(ratios);
        MESSAGE("sigma ratio for 4x circuits: " << mean);
        CHECK(mean == doctest::Approx(2).epsilon(0.2));
    }

    TEST_CASE("bootstrap with 1000 replicates matches 4000") {
        Rng rng(3);
        Dataset ds = synthetic(2, 0.95, 0.98, kDepths, 30, 1000, 0.03, rng);
        Rng r1(10), r2(11);
        BootstrapResult a = bootstrap(ds, 1000, r1);
        BootstrapResult b = bootstrap(ds, 4000, r2, {}, 2);
        CHECK(a.sigma_p == doctest::Approx(b.sigma_p).epsilon(0.15));
        CHECK(a.sigma_r == doctest::Approx(b.sigma_r).epsilon(0.15));
        Rng r3(10);
        BootstrapResult c = bootstrap(ds, 1000, r3, {}, 3);
        CHECK(c.sigma_p == a.sigma_p);
    }

    TEST_CASE("bootstrap calibration on binomial data") {
        // p within 3 sigma of the truth in most datasets, and unbiased overall.
        Rng rng(4);
        const double p_true = 0.99;
        int covered = 0;
        const int trials = 40;
        std::vector<double> z;
        for (int t = 0; t < trials; t++) {
            Dataset ds = synthetic(2, 0.97, p_true, kDepths, 100, 1000, 0.02, rng);
            DecayFit f = fit_dataset(ds, {}, 200, t);
            covered += std::abs(f.p - p_true) <= 3 * f.sigma_p;
            z.push_back((f.p - p_true) / f.sigma_p);
        }
        CHECK(covered >= trials - 2);
        MESSAGE("mean z " << teststats::mean(z) << ", sd " << teststats::stddev(z));
        CHECK(std::abs(teststats::mean(z)) < 0.5);
    }

    TEST_CASE("fit is unbiased at the model") {
        Rng rng(5);
        std::vector<double> ps;
        for (int t = 0; t < 200; t++) {
            Dataset ds = synthetic(1, 0.95, 0.97, kDepths, 20, 500, 0.02, rng);
            ps.push_back(fit_decay(depth_points(group_by_depth(ds)), 1).p);
        }
        double se = teststats::stddev(ps) / std::sqrt(200.0);
        CHECK(std::abs(teststats::mean(ps) - 0.97) < 3 * se);
    }

    TEST_CASE("relative error sigma") {
        CHECK(relative_error_sigma(0.01, 0.001, 0.01, 0) == doctest::Approx(0.1));
        CHECK(relative_error_sigma(0, 0.001, 0.01, 0.002) == doctest::Approx(0.1));
        CHECK_THROWS_AS(relative_error_sigma(0.01, 0.001, 0, 0), DomainError);
    }

    TEST_CASE("oracle on zero noise and depolarizing noise") {
        Rng rng(6);
        OmegaSpec spec = OmegaSpec::standard(2, 0.25);
        NoiseModel ideal(2);
        auto z = epsilon_omega_oracle(spec, ideal, kDepths, 5, rng);
        CHECK(z.epsilon == 0);
        CHECK(z.p_rc == 1);
        for (size_t n : {1, 2, 3}) {
            NoiseModel dep(n);
            dep.set_layer_depolarizing(0.97);
            auto e = epsilon_omega_oracle(OmegaSpec::standard(n, n == 1 ? 0 : 0.25), dep, kDepths, 3, rng);
            double four = std::pow(4.0, static_cast<double>(n));
            CHECK(e.epsilon == doctest::Approx((four - 1) / four * 0.03).epsilon(1e-10));
        }
        CHECK_THROWS_AS(epsilon_omega_oracle(OmegaSpec::standard(9, 0.25), NoiseModel(9), kDepths, 2, rng),
                        CapabilityError);
        CHECK_THROWS_AS(epsilon_omega_oracle(spec, ideal, {}, 2, rng), DomainError);
    }

    TEST_CASE("circuit polarization paths agree with the layer PTM product") {
        Rng rng(7);
        for (int trial = 0; trial < 20; trial++) {
            size_t n = 1 + uniform_below(rng, 2);
            OmegaSpec spec = OmegaSpec::standard(n, n == 1 ? 0 : 0.5);
            ModelFamily family = trial % 2 ? ModelFamily::Stochastic : ModelFamily::Both;
            NoiseModel m = sample_random_model(family, n, 0.03, spec.gate_set, {}, rng);
            Circuit core(n);
            for (int t = 0; t < 6; t++) {
                core.append(sample_omega_layer(spec, rng));
            }
            size_t dim = size_t{1} << (2 * n);
            Matrix noisy = Matrix::Identity(dim, dim), ideal = Matrix::Identity(dim, dim);
            for (const auto &layer : core.layers()) {
                noisy = layer_ptm(layer, &m) * noisy;
                ideal = layer_ptm(layer, nullptr) * ideal;
            }
            Matrix err = noisy * ideal.transpose();
            CHECK(circuit_polarization(core, m) == doctest::Approx(polarization(err)).epsilon(1e-12));
        }
    }

    TEST_CASE("oracle agrees with BiRB on a stochastic model") {
        Rng rng(8);
        OmegaSpec spec = OmegaSpec::standard(2, 0.25);
        NoiseModel m = sample_random_model(ModelFamily::Stochastic, 2, 0.005, spec.gate_set, {}, rng);
        std::vector<size_t> depths = power_of_two_depths(7);
        OracleOptions oo;
        oo.bootstrap = 200;
        auto eps = epsilon_omega_oracle(spec, m, depths, 100, rng, oo);
        ExperimentDesign design{2, depths, 100, spec, 77, BirbVariant::Standard};
        RunOptions opts;
        opts.engine = Engine::Dense;
        opts.seed = 5;
        DecayFit f = fit_dataset(run_design(design, m, opts), {}, 200, 1);
        double z = (f.r_omega - eps.epsilon) / eps.epsilon / relative_error_sigma(f.r_omega, f.sigma_r, eps.epsilon, eps.sigma);
        MESSAGE("r=" << f.r_omega << " eps=" << eps.epsilon << " z=" << z);
        CHECK(std::abs(z) <= 3);
    }

    TEST_CASE("planner") {
        PlannerInput in;
        in.nu = 0.05;
        in.alpha = 0.1;
        in.A = 1;
        in.depth = 0;
        PlannerOutput out = plan_samples(in);
        CHECK(out.K == 738);
        CHECK(out.K_real == doctest::Approx(2 * std::log(40.0) / 0.01));
        in.gamma_bar = 0.99;
        in.depth = 10;
        double k10 = plan_samples(in).K_real;
        in.depth = 20;
        CHECK(plan_samples(in).K_real / k10 == doctest::Approx(std::pow(0.99, -20)));
        in.nu = 1;
        CHECK_THROWS_AS(plan_samples(in), DomainError);
        in.nu = 0.05;
        in.A = 0;
        CHECK_THROWS_AS(plan_samples(in), DomainError);
        TwoDepthPlan two = plan_two_depths(0.05, 0.1, 1, 0.99);
        CHECK(two.d0 == 0);
        CHECK(two.d1 == 99);
        CHECK(two.per_depth_accuracy == doctest::Approx(99 * 0.1 / 2));
        double base = 8 * std::log(40.0) / (99.0 * 99.0 * 0.01);
        CHECK(two.K_d0 == static_cast<uint64_t>(std::ceil(base)));
        CHECK(two.K_d1 == static_cast<uint64_t>(std::ceil(base / std::pow(0.99, 198))));
        CHECK_THROWS_AS(plan_two_depths(0.05, 0.1, 1, 1), DomainError);
    }

    TEST_CASE("layer enumeration") {
        for (size_t n : {1, 2}) {
            auto layers = enumerate_layers(OmegaSpec::standard(n, n == 1 ? 0 : 0.25));
            double total = 0;
            for (const auto &l : layers) {
                total += l.probability;
            }
            CHECK(total == doctest::Approx(1).epsilon(1e-14));
            CHECK(layers.size() == (n == 1 ? 3 : 11));
        }
        CHECK_THROWS_AS(enumerate_layers(OmegaSpec::standard(3, 0.25)), CapabilityError);
    }

    TEST_CASE("superchannel spectrum") {
        Rng rng(9);
        for (size_t n : {1, 2}) {
            OmegaSpec spec = OmegaSpec::standard(n, n == 1 ? 0 : 0.25);
            auto ideal = build_L_superchannel(spec, NoiseModel(n), rng);
            CHECK(ideal.eigenvalues.size() == static_cast<size_t>(std::pow(16, n)));
            CHECK(ideal.unit_eigenvalues == 2);
            CHECK(ideal.lambda == doctest::Approx(1));
            CHECK(std::abs(ideal.eigenvalues[2]) < 1 - 1e-6);
            NoiseModel dep(n);
            dep.set_layer_depolarizing(0.95);
            CHECK(build_L_superchannel(spec, dep, rng).lambda == doctest::Approx(0.95).epsilon(1e-10));
        }
        CHECK_THROWS_AS(build_L_superchannel(OmegaSpec::standard(3, 0.25), NoiseModel(3), rng), CapabilityError);
        LSuperchannelOptions mc;
        mc.monte_carlo_samples = 500;
        auto sampled = build_L_superchannel(OmegaSpec::standard(2, 0.25), NoiseModel(2), rng, mc);
        CHECK(sampled.monte_carlo);
        CHECK(sampled.unit_eigenvalues == 2);
    }
}
