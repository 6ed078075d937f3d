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

#include "birb/experiment.hpp"
#include "birb/rng.hpp"

namespace birb {

enum class Weighting { Auto, Weighted, Unweighted };
enum class RConvention { Entanglement, AverageGate };
std::string convention_name(RConvention c);
RConvention parse_convention(const std::string &name);
std::string weighting_name(Weighting w);
Weighting parse_weighting(const std::string &name);

/// Per-circuit values grouped by depth.
struct GroupedData {
    std::vector<size_t> depths;
    std::vector<std::vector<double>> values;
};
GroupedData group_by_depth(const Dataset &ds);

struct DepthPoint {
    size_t depth = 0;
    double f = 0;
    /// Standard error of the mean from circuit-to-circuit scatter.
    double sigma = 0;
    size_t count = 0;
};
std::vector<DepthPoint> depth_points(const GroupedData &data);

/// Mean over circuits at depth d of the per-circuit estimates.
double fbar(const Dataset &ds, size_t d);

struct FitOptions {
    Weighting weighting = Weighting::Auto;
    RConvention convention = RConvention::Entanglement;
    /// Fit A p^d + B instead of A p^d.
    bool free_B = false;
};

struct DecayFit {
    size_t num_qubits = 0;
    double A = 0;
    double p = 0;
    double B = 0;
    bool free_B = false;
    bool weighted = false;
    RConvention convention = RConvention::Entanglement;
    double r_omega = 0;
    double r_omega_per_qubit = 0;
    std::vector<DepthPoint> points;
    std::vector<double> residuals;
    double sigma_A = 0;
    double sigma_p = 0;
    double sigma_r = 0;
    size_t bootstrap_replicates = 0;
    size_t bootstrap_failures = 0;
};

/// Bounded least squares of f_d = A p^d (+ B), A in [0, 1.1], p in [0, 1].
/// Throws FitError when no point is positive, only one depth is present, or
/// the optimum sits on the A bounds or at p = 0.
DecayFit fit_decay(const std::vector<DepthPoint> &points, size_t num_qubits, const FitOptions &opts = {});

double r_omega(double p, size_t num_qubits, RConvention convention = RConvention::Entanglement);
/// 1 - (1 - r)^(1/n).
double r_per_qubit(double r, size_t num_qubits);

struct BootstrapResult {
    double sigma_A = 0;
    double sigma_p = 0;
    double sigma_r = 0;
    size_t replicates = 0;
    size_t failures = 0;
};

/// Resamples circuits with replacement within each depth and refits.
BootstrapResult bootstrap(const GroupedData &data, size_t num_qubits, size_t replicates, Rng &rng,
                          const FitOptions &opts = {}, size_t workers = 1);
BootstrapResult bootstrap(const Dataset &ds, size_t replicates, Rng &rng, const FitOptions &opts = {},
                          size_t workers = 1);

/// Fit plus bootstrap errors; `replicates == 0` skips the bootstrap.
DecayFit fit_dataset(const Dataset &ds, const FitOptions &opts, size_t replicates, uint64_t seed,
                     size_t workers = 1);

/// Uncertainty of (r - eps) / eps from independent errors on r and eps.
double relative_error_sigma(double r, double sigma_r, double eps, double sigma_eps);

}  // namespace birb
