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

#include "birb/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "birb/errors.hpp"
#include "birb/log.hpp"
#include "birb/parallel.hpp"

namespace birb {

namespace {

constexpr double kAMax = 1.1;
constexpr double kBMin = -1.0, kBMax = 1.0;

struct Problem {
    std::vector<double> d, f, w;
    bool free_B = false;

    size_t dim() const {
        return free_B ? 3 : 2;
    }
    double model(const Eigen::Vector3d &t, double d) const {
        return t[0] * std::pow(t[1], d) + (free_B ? t[2] : 0.0);
    }
    double cost(const Eigen::Vector3d &t) const {
        double c = 0;
        for (size_t i = 0; i < d.size(); i++) {
            double r = f[i] - model(t, d[i]);
            c += w[i] * r * r;
        }
        return c;
    }
    void clamp(Eigen::Vector3d &t) const {
        t[0] = std::clamp(t[0], 0.0, kAMax);
        t[1] = std::clamp(t[1], 0.0, 1.0);
        t[2] = free_B ? std::clamp(t[2], kBMin, kBMax) : 0.0;
    }
    /// Best (A, B) for fixed p by linear least squares, clamped.
    Eigen::Vector3d profile(double p) const {
        Eigen::Vector3d t(0, p, 0);
        if (!free_B) {
            double num = 0, den = 0;
            for (size_t i = 0; i < d.size(); i++) {
                double x = std::pow(p, d[i]);
                num += w[i] * x * f[i];
                den += w[i] * x * x;
            }
            t[0] = den > 0 ? num / den : 0;
        } else {
            Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
            Eigen::Vector2d b = Eigen::Vector2d::Zero();
            for (size_t i = 0; i < d.size(); i++) {
                Eigen::Vector2d x(std::pow(p, d[i]), 1.0);
                M += w[i] * x * x.transpose();
                b += w[i] * f[i] * x;
            }
            Eigen::Vector2d ab = M.ldlt().solve(b);
            if (ab.allFinite()) {
                t[0] = ab[0];
                t[2] = ab[1];
            }
        }
        clamp(t);
        return t;
    }
};

Eigen::Vector3d levenberg_marquardt(const Problem &pr, Eigen::Vector3d t) {
    size_t m = pr.dim();
    double cost = pr.cost(t);
    double mu = 1e-3;
    for (int iter = 0; iter < 1000 && cost > 0; iter++) {
        Eigen::MatrixXd JtJ = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd Jtr = Eigen::VectorXd::Zero(m);
        for (size_t i = 0; i < pr.d.size(); i++) {
            double d = pr.d[i];
            double pd = std::pow(t[1], d);
            Eigen::VectorXd g(m);
            g[0] = pd;
            g[1] = d == 0 ? 0.0 : t[0] * d * std::pow(t[1], d - 1);
            if (m == 3) {
                g[2] = 1.0;
            }
            double r = pr.f[i] - pr.model(t, d);
            JtJ += pr.w[i] * g * g.transpose();
            Jtr += pr.w[i] * r * g;
        }
        bool improved = false;
        while (mu < 1e16) {
            Eigen::MatrixXd M = JtJ;
            for (size_t j = 0; j < m; j++) {
                M(j, j) += mu * std::max(JtJ(j, j), 1e-300);
            }
            Eigen::VectorXd step = M.ldlt().solve(Jtr);
            Eigen::Vector3d next = t;
            for (size_t j = 0; j < m; j++) {
                next[j] += step[j];
            }
            pr.clamp(next);
            double c = pr.cost(next);
            if (step.allFinite() && c < cost) {
                double moved = (next - t).norm();
                t = next;
                double old = cost;
                cost = c;
                mu = std::max(mu / 3, 1e-15);
                improved = true;
                if (moved <= 1e-16 * (1 + t.norm()) || old - c <= 1e-30 * old) {
                    return t;
                }
                break;
            }
            mu *= 4;
        }
        if (!improved) {
            break;
        }
    }
    return t;
}

double sample_sd(const std::vector<double> &x) {
    if (x.size() < 2) {
        return 0;
    }
    double mean = 0;
    for (double v : x) {
        mean += v;
    }
    mean /= static_cast<double>(x.size());
    double ss = 0;
    for (double v : x) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

}  // namespace

std::string convention_name(RConvention c) {
    return c == RConvention::Entanglement ? "entanglement" : "average-gate";
}

RConvention parse_convention(const std::string &name) {
    if (name == "entanglement") {
        return RConvention::Entanglement;
    }
    if (name == "average-gate") {
        return RConvention::AverageGate;
    }
    throw ConfigError("convention: expected entanglement or average-gate, got '" + name + "'");
}

std::string weighting_name(Weighting w) {
    switch (w) {
        case Weighting::Auto:
            return "auto";
        case Weighting::Weighted:
            return "weighted";
        default:
            return "unweighted";
    }
}

Weighting parse_weighting(const std::string &name) {
    if (name == "auto") {
        return Weighting::Auto;
    }
    if (name == "weighted") {
        return Weighting::Weighted;
    }
    if (name == "unweighted") {
        return Weighting::Unweighted;
    }
    throw ConfigError("weighting: expected auto, weighted or unweighted, got '" + name + "'");
}

GroupedData group_by_depth(const Dataset &ds) {
    std::map<size_t, std::vector<double>> by_depth;
    for (const auto &row : ds.rows) {
        by_depth[row.depth].push_back(row.estimate());
    }
    GroupedData g;
    for (auto &[d, v] : by_depth) {
        g.depths.push_back(d);
        g.values.push_back(std::move(v));
    }
    return g;
}

std::vector<DepthPoint> depth_points(const GroupedData &data) {
    std::vector<DepthPoint> out;
    for (size_t i = 0; i < data.depths.size(); i++) {
        const auto &v = data.values[i];
        if (v.empty()) {
            continue;
        }
        DepthPoint pt;
        pt.depth = data.depths[i];
        pt.count = v.size();
        for (double x : v) {
            pt.f += x;
        }
        pt.f /= static_cast<double>(v.size());
        pt.sigma = sample_sd(v) / std::sqrt(static_cast<double>(v.size()));
        out.push_back(pt);
    }
    return out;
}

double fbar(const Dataset &ds, size_t d) {
    double sum = 0;
    size_t count = 0;
    for (const auto &row : ds.rows) {
        if (row.depth == d) {
            sum += row.estimate();
            count++;
        }
    }
    if (count == 0) {
        throw DomainError("no circuits at depth " + std::to_string(d));
    }
    return sum / static_cast<double>(count);
}

double r_omega(double p, size_t num_qubits, RConvention convention) {
    int bits = static_cast<int>(convention == RConvention::Entanglement ? 2 * num_qubits : num_qubits);
    return (1 - std::ldexp(1.0, -bits)) * (1 - p);
}

double r_per_qubit(double r, size_t num_qubits) {
    if (num_qubits == 0) {
        throw DomainError("r_per_qubit needs n >= 1");
    }
    return 1 - std::pow(1 - r, 1.0 / static_cast<double>(num_qubits));
}

DecayFit fit_decay(const std::vector<DepthPoint> &points, size_t num_qubits, const FitOptions &opts) {
    std::vector<size_t> distinct;
    bool any_positive = false;
    for (const auto &pt : points) {
        if (std::find(distinct.begin(), distinct.end(), pt.depth) == distinct.end()) {
            distinct.push_back(pt.depth);
        }
        any_positive |= pt.f > 0;
    }
    if (distinct.size() < 2) {
        throw FitError("fit failed: need at least two distinct depths");
    }
    if (!any_positive) {
        throw FitError("fit failed: all points are <= 0");
    }
    Problem pr;
    pr.free_B = opts.free_B;
    // auto is unweighted; 1/sigma-hat^2 weights correlate with f-hat and bias p when A is near 1
    bool weighted = opts.weighting == Weighting::Weighted;
    for (const auto &pt : points) {
        weighted &= pt.sigma > 1e-12;
    }
    if (opts.weighting == Weighting::Weighted && !weighted) {
        log_warn("zero scatter at some depth; falling back to an unweighted fit");
    }
    for (const auto &pt : points) {
        pr.d.push_back(static_cast<double>(pt.depth));
        pr.f.push_back(pt.f);
        pr.w.push_back(weighted ? 1.0 / (pt.sigma * pt.sigma) : 1.0);
    }

    // Seeds: log-linear regression on positive points, then a coarse profile grid.
    std::vector<Eigen::Vector3d> seeds;
    {
        double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < pr.d.size(); i++) {
            if (pr.f[i] <= 0) {
                continue;
            }
            double x = pr.d[i], y = std::log(pr.f[i]);
            sw += 1;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double den = sw * sxx - sx * sx;
        if (sw >= 2 && den > 0) {
            double slope = (sw * sxy - sx * sy) / den;
            double icpt = (sy - slope * sx) / sw;
            Eigen::Vector3d t(std::exp(icpt), std::exp(slope), 0);
            pr.clamp(t);
            seeds.push_back(t);
        }
    }
    for (int i = 1; i <= 100; i++) {
        seeds.push_back(pr.profile(i / 100.0));
    }
    for (int k = 1; k <= 40; k++) {
        seeds.push_back(pr.profile(1 - std::pow(10.0, -k / 4.0)));
    }
    std::sort(seeds.begin(), seeds.end(),
              [&](const Eigen::Vector3d &a, const Eigen::Vector3d &b) { return pr.cost(a) < pr.cost(b); });
    Eigen::Vector3d best = levenberg_marquardt(pr, seeds[0]);
    for (size_t s = 1; s < std::min<size_t>(3, seeds.size()); s++) {
        Eigen::Vector3d t = levenberg_marquardt(pr, seeds[s]);
        if (pr.cost(t) < pr.cost(best)) {
            best = t;
        }
    }

    if (best[0] <= 1e-12 || best[0] >= kAMax - 1e-12 || best[1] <= 1e-12) {
        throw FitError("fit failed: optimum on a parameter bound (A=" + std::to_string(best[0]) +
                       ", p=" + std::to_string(best[1]) + ")");
    }
    DecayFit fit;
    fit.num_qubits = num_qubits;
    fit.A = best[0];
    fit.p = best[1];
    fit.B = best[2];
    fit.free_B = opts.free_B;
    fit.weighted = weighted;
    fit.convention = opts.convention;
    fit.r_omega = r_omega(fit.p, num_qubits, opts.convention);
    fit.r_omega_per_qubit = r_per_qubit(fit.r_omega, num_qubits);
    fit.points = points;
    for (size_t i = 0; i < pr.d.size(); i++) {
        fit.residuals.push_back(pr.f[i] - pr.model(best, pr.d[i]));
    }
    return fit;
}

BootstrapResult bootstrap(const GroupedData &data, size_t num_qubits, size_t replicates, Rng &rng,
                          const FitOptions &opts, size_t workers) {
    BootstrapResult res;
    res.replicates = replicates;
    if (replicates == 0) {
        return res;
    }
    uint64_t base = rng();
    std::vector<double> As(replicates), ps(replicates), rs(replicates);
    std::vector<uint8_t> ok(replicates, 0);
    parallel_for(replicates, workers, [&](size_t b) {
        Rng local = substream(base, "bootstrap", {b});
        GroupedData sample;
        sample.depths = data.depths;
        for (const auto &v : data.values) {
            std::vector<double> s(v.size());
            for (auto &x : s) {
                x = v[uniform_below(local, v.size())];
            }
            sample.values.push_back(std::move(s));
        }
        try {
            DecayFit f = fit_decay(depth_points(sample), num_qubits, opts);
            As[b] = f.A;
            ps[b] = f.p;
            rs[b] = f.r_omega;
            ok[b] = 1;
        } catch (const FitError &) {
        }
    });
    std::vector<double> a, p, r;
    for (size_t b = 0; b < replicates; b++) {
        if (ok[b]) {
            a.push_back(As[b]);
            p.push_back(ps[b]);
            r.push_back(rs[b]);
        } else {
            res.failures++;
        }
    }
    res.sigma_A = sample_sd(a);
    res.sigma_p = sample_sd(p);
    res.sigma_r = sample_sd(r);
    return res;
}

BootstrapResult bootstrap(const Dataset &ds, size_t replicates, Rng &rng, const FitOptions &opts, size_t workers) {
    return bootstrap(group_by_depth(ds), ds.num_qubits, replicates, rng, opts, workers);
}

DecayFit fit_dataset(const Dataset &ds, const FitOptions &opts, size_t replicates, uint64_t seed, size_t workers) {
    GroupedData g = group_by_depth(ds);
    DecayFit fit = fit_decay(depth_points(g), ds.num_qubits, opts);
    if (replicates > 0) {
        Rng rng = substream(seed, "bootstrap-root");
        BootstrapResult b = bootstrap(g, ds.num_qubits, replicates, rng, opts, workers);
        fit.sigma_A = b.sigma_A;
        fit.sigma_p = b.sigma_p;
        fit.sigma_r = b.sigma_r;
        fit.bootstrap_replicates = b.replicates;
        fit.bootstrap_failures = b.failures;
    }
    return fit;
}

double relative_error_sigma(double r, double sigma_r, double eps, double sigma_eps) {
    if (eps == 0) {
        throw DomainError("relative error undefined for eps = 0");
    }
    // (r/eps) sqrt((sr/r)^2 + (se/eps)^2), written to stay finite at r = 0.
    double a = sigma_r / eps;
    double b = r * sigma_eps / (eps * eps);
    return std::sqrt(a * a + b * b);
}

}  // namespace birb
