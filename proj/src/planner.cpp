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

#include "birb/planner.hpp"

#include <algorithm>
#include <cmath>

#include "birb/errors.hpp"

namespace birb {

namespace {

void check_common(double nu, double accuracy, double A, double gamma_bar) {
    if (!(nu > 0 && nu < 1)) {
        throw DomainError("nu must lie in (0, 1)");
    }
    if (!(accuracy > 0) || !std::isfinite(accuracy)) {
        throw DomainError("accuracy must be > 0");
    }
    if (!(A > 0 && A <= 1)) {
        throw DomainError("A must lie in (0, 1]");
    }
    if (!(gamma_bar > 0 && gamma_bar <= 1)) {
        throw DomainError("gamma_bar must lie in (0, 1]");
    }
}

uint64_t ceil_count(double k) {
    // Guard against 738.0000000001 style roundoff pushing the count up by one.
    double r = std::round(k);
    if (std::abs(k - r) <= 1e-9 * std::max(1.0, k)) {
        return static_cast<uint64_t>(r);
    }
    return static_cast<uint64_t>(std::ceil(k));
}

}  // namespace

PlannerOutput plan_samples(const PlannerInput &in) {
    check_common(in.nu, in.alpha, in.A, in.gamma_bar);
    PlannerOutput out;
    double decay = std::pow(in.gamma_bar, 2.0 * static_cast<double>(in.depth));
    out.K_real = 2 * std::log(2 / in.nu) / (in.alpha * in.alpha * in.A * in.A * decay);
    if (!std::isfinite(out.K_real)) {
        throw DomainError("planned K overflows");
    }
    out.K = ceil_count(out.K_real);
    return out;
}

TwoDepthPlan plan_two_depths(double nu, double beta, double A, double gamma_bar) {
    check_common(nu, beta, A, gamma_bar);
    if (gamma_bar >= 1) {
        throw DomainError("two-depth design needs gamma_bar < 1");
    }
    TwoDepthPlan plan;
    plan.d1 = std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(1 / std::log(1 / gamma_bar))));
    double d1 = static_cast<double>(plan.d1);
    plan.per_depth_accuracy = d1 * beta / 2;
    double base = 8 * std::log(2 / nu) / (d1 * d1 * beta * beta * A * A);
    plan.K_d0 = ceil_count(base);
    plan.K_d1 = ceil_count(base / std::pow(gamma_bar, 2 * d1));
    return plan;
}

}  // namespace birb
