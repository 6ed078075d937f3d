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

#include <cstdint>

namespace birb {

struct PlannerInput {
    /// Failure probability.
    double nu = 0.05;
    /// Relative accuracy.
    double alpha = 0.1;
    double A = 1.0;
    /// Expected layer polarization.
    double gamma_bar = 1.0;
    uint64_t depth = 0;
};

struct PlannerOutput {
    /// Circuits needed at the given depth, rounded up.
    uint64_t K = 0;
    /// The unrounded formula value.
    double K_real = 0;
};

/// K = 2 ln(2/nu) / (alpha^2 A^2 gamma_bar^(2d)), from Hoeffding's inequality
/// in the single-shot limit. Independent of the qubit count.
PlannerOutput plan_samples(const PlannerInput &in);

struct TwoDepthPlan {
    uint64_t d0 = 0;
    uint64_t d1 = 0;
    /// Multiplicative accuracy required of each polarization estimate.
    double per_depth_accuracy = 0;
    uint64_t K_d0 = 0;
    uint64_t K_d1 = 0;
};

/// Circuit counts to estimate gamma_bar to multiplicative accuracy beta from
/// the ratio of estimates at depths 0 and d1 = round(1 / ln(1/gamma_bar)).
TwoDepthPlan plan_two_depths(double nu, double beta, double A, double gamma_bar);

}  // namespace birb
