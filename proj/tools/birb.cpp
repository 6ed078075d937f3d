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

// Command-line front end: design, simulate, fit, oracle, scramble, plan, lspec.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "birb/errors.hpp"
#include "birb/experiment.hpp"
#include "birb/fit.hpp"
#include "birb/io.hpp"
#include "birb/log.hpp"
#include "birb/oracle.hpp"
#include "birb/planner.hpp"
#include "birb/sampler.hpp"
#include "birb/superchannel.hpp"

using namespace birb;

namespace {

enum Exit { kOk = 0, kOther = 1, kValidation = 2, kCapability = 3, kFitFailure = 4 };

struct Common {
    std::string config;
    std::optional<uint64_t> seed;
    size_t workers = 1;
    std::string engine = "dense";
    std::string out = "-";
    std::string format = "jsonl";
};

class Output {
   public:
    explicit Output(const std::string &path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ConfigError("--out: cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream &stream() {
        return file_ ? *file_ : std::cout;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
};

std::unique_ptr<std::istream> open_input(const std::string &path, const std::string &flag) {
    if (path == "-") {
        return std::make_unique<std::istream>(std::cin.rdbuf());
    }
    auto in = std::make_unique<std::ifstream>(path);
    if (!*in) {
        throw ConfigError(flag + ": cannot open '" + path + "'");
    }
    return in;
}

Json load_config(const Common &c, const char *cmd) {
    if (c.config.empty()) {
        throw ConfigError(std::string(cmd) + ": --config is required");
    }
    return read_json_file(c.config);
}

// Reads {n, omega?, depths | max_exponent, circuits_per_depth} for the
// commands that need a layer distribution.
ExperimentDesign load_design(const Common &c, const char *cmd) {
    Json j = load_config(c, cmd);
    const Json &d = j.contains("design") ? j["design"] : j;
    ExperimentDesign design = design_from_json(d, j.contains("design") ? "design" : "config");
    if (c.seed) {
        design.seed = *c.seed;
    }
    return design;
}

NoiseModel load_noise(const std::string &path, size_t n) {
    if (path.empty()) {
        return NoiseModel(n);
    }
    NoiseModel m = noise_from_json(read_json_file(path));
    if (m.num_qubits() != n) {
        throw DimensionError("--noise: model is for n=" + std::to_string(m.num_qubits()) + ", expected n=" +
                             std::to_string(n));
    }
    return m;
}

int cmd_design(const Common &c) {
    ExperimentDesign design = load_design(c, "design");
    if (c.format != "jsonl") {
        throw ConfigError("--format: design only writes jsonl");
    }
    if (design.variant == BirbVariant::Standard) {
        std::string warning = design.omega.validate();
        if (!warning.empty()) {
            log_warn(warning);
        }
    }
    auto circuits = generate_design(design);
    Output out(c.out);
    for (const auto &dc : circuits) {
        out.stream() << circuit_to_json(dc, design.seed, variant_name(design.variant)).dump() << '\n';
    }
    log_info("wrote " + std::to_string(circuits.size()) + " circuits");
    return kOk;
}

void write_rows(std::ostream &out, const Dataset &ds, const std::string &format) {
    if (format == "jsonl") {
        write_dataset(out, ds);
        return;
    }
    for (const auto &r : ds.rows) {
        out << r.id << ',' << r.num_qubits << ',' << r.depth << ',' << r.target.str() << ',' << r.shots << ','
            << r.success_sum << ',';
        if (r.exact) {
            std::ostringstream v;
            v.precision(17);
            v << *r.exact;
            out << v.str();
        }
        out << '\n';
    }
}

int cmd_simulate(const Common &c, const std::string &circuits_path, const std::string &noise_path, uint64_t shots,
                 size_t chunk) {
    Engine engine = parse_engine(c.engine);
    if (c.format != "jsonl" && c.format != "csv") {
        throw ConfigError("--format: expected jsonl or csv");
    }
    auto in = open_input(circuits_path, "--circuits");
    Output out(c.out);
    if (c.format == "csv") {
        out.stream() << "id,n,d,target,N,success_sum,exact\n";
    }
    std::optional<NoiseModel> noise;
    RunOptions opts;
    opts.engine = engine;
    opts.shots = engine == Engine::DenseExact ? 0 : shots;
    opts.workers = c.workers;
    std::vector<DesignedCircuit> batch;
    std::string line;
    size_t lineno = 0, total = 0;
    auto flush = [&] {
        if (batch.empty()) {
            return;
        }
        Dataset ds = run_circuits(batch, *noise, opts);
        write_rows(out.stream(), ds, c.format);
        total += batch.size();
        batch.clear();
    };
    // Constant memory: circuits are read, run and written in chunks.
    while (std::getline(*in, line)) {
        lineno++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::string path = "--circuits line " + std::to_string(lineno);
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error &e) {
            throw ConfigError(path + ": " + e.what());
        }
        DesignedCircuit dc = circuit_from_json(j, path);
        if (!noise) {
            size_t n = dc.circuit.num_qubits();
            noise = load_noise(noise_path, n);
            opts.seed = c.seed ? *c.seed : (j.contains("seed") ? cfg::get_uint(j["seed"], path + ".seed") : 0);
            check_engine(engine, n, *noise);
        } else if (dc.circuit.num_qubits() != noise->num_qubits()) {
            throw ConfigError(path + ".n: circuits mix qubit counts");
        }
        batch.push_back(std::move(dc));
        if (batch.size() >= chunk) {
            flush();
        }
    }
    flush();
    log_info("simulated " + std::to_string(total) + " circuits");
    return kOk;
}

int cmd_fit(const Common &c, const std::string &dataset_path, size_t replicates, const std::string &weighting,
            const std::string &convention, const std::string &csv_path) {
    auto in = open_input(dataset_path, "--dataset");
    Dataset ds = read_dataset(*in);
    if (ds.rows.empty()) {
        throw FitError("fit failed: empty dataset");
    }
    FitOptions opts;
    opts.weighting = parse_weighting(weighting);
    opts.convention = parse_convention(convention);
    uint64_t seed = c.seed ? *c.seed : ds.seed;
    DecayFit fit;
    try {
        fit = fit_dataset(ds, opts, replicates, seed, c.workers);
    } catch (const FitError &e) {
        Output out(c.out);
        Json j{{"schema_version", kSchemaVersion}, {"n", ds.num_qubits}, {"fit_status", "failed"},
               {"message", e.what()}};
        out.stream() << j.dump(2) << '\n';
        throw;
    }
    Output out(c.out);
    if (c.format == "csv") {
        out.stream() << fit_csv(fit);
    } else {
        Json j = fit_report_json(fit, "ok");
        j["seed"] = seed;
        out.stream() << j.dump(2) << '\n';
    }
    if (!csv_path.empty()) {
        Output csv(csv_path);
        csv.stream() << fit_csv(fit);
    }
    return kOk;
}

int cmd_oracle(const Common &c, const std::string &noise_path, size_t replicates, bool free_B) {
    ExperimentDesign design = load_design(c, "oracle");
    NoiseModel noise = load_noise(noise_path, design.num_qubits);
    OracleOptions opts;
    opts.workers = c.workers;
    opts.bootstrap = replicates;
    opts.fit.free_B = free_B;
    Rng rng = substream(design.seed, "oracle");
    auto est = epsilon_omega_oracle(design.omega, noise, design.depths, design.circuits_per_depth, rng, opts);
    Json j = oracle_to_json(est);
    j["seed"] = design.seed;
    Output out(c.out);
    out.stream() << j.dump(2) << '\n';
    return kOk;
}

int cmd_scramble(const Common &c, size_t k, size_t pairs, size_t circuits, size_t probes) {
    ExperimentDesign design = load_design(c, "scramble");
    Rng rng = substream(design.seed, "scramble");
    auto rep = estimate_scrambling(design.omega, k, pairs, circuits, probes, rng);
    Json j = scrambling_to_json(rep);
    j["seed"] = design.seed;
    Output out(c.out);
    out.stream() << j.dump(2) << '\n';
    return kOk;
}

int cmd_plan(const Common &c, const PlannerInput &in, std::optional<double> beta) {
    PlannerOutput p = plan_samples(in);
    Json j{{"schema_version", kSchemaVersion},
           {"nu", in.nu},
           {"alpha", in.alpha},
           {"A", in.A},
           {"gamma_bar", in.gamma_bar},
           {"d", in.depth},
           {"K", p.K},
           {"K_real", p.K_real}};
    if (beta) {
        TwoDepthPlan t = plan_two_depths(in.nu, *beta, in.A, in.gamma_bar);
        j["two_depth"] = Json{{"beta", *beta},
                              {"d0", t.d0},
                              {"d1", t.d1},
                              {"per_depth_accuracy", t.per_depth_accuracy},
                              {"K_d0", t.K_d0},
                              {"K_d1", t.K_d1}};
    }
    Output out(c.out);
    out.stream() << j.dump(2) << '\n';
    return kOk;
}

int cmd_lspec(const Common &c, const std::string &noise_path, size_t samples) {
    ExperimentDesign design = load_design(c, "lspec");
    NoiseModel noise = load_noise(noise_path, design.num_qubits);
    Rng rng = substream(design.seed, "lspec");
    LSuperchannelOptions opts;
    opts.monte_carlo_samples = samples;
    auto rep = build_L_superchannel(design.omega, noise, rng, opts);
    Json j = lspec_to_json(rep);
    j["seed"] = design.seed;
    Output out(c.out);
    out.stream() << j.dump(2) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Binary randomized benchmarking: design, simulate and analyze BiRB experiments"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App *sub, bool engine) {
        sub->add_option("--config", common.config, "Config JSON path");
        sub->add_option("--seed", common.seed, "Top-level 64-bit seed");
        sub->add_option("--workers", common.workers, "Worker threads (0 = all cores)");
        if (engine) {
            sub->add_option("--engine", common.engine, "dense, dense-exact or frame");
        }
        sub->add_option("--out", common.out, "Output path, - for stdout");
        sub->add_option("--format", common.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
    };

    auto *design = app.add_subcommand("design", "Sample BiRB circuits");
    add_common(design, false);

    std::string circuits_path = "-", noise_path;
    uint64_t shots = 1000;
    size_t chunk = 1024;
    auto *simulate = app.add_subcommand("simulate", "Run circuits under a noise model");
    add_common(simulate, true);
    simulate->add_option("--circuits", circuits_path, "Circuits JSONL, - for stdin");
    simulate->add_option("--noise", noise_path, "Noise model JSON (ideal when omitted)");
    simulate->add_option("-N,--shots", shots, "Shots per circuit");
    simulate->add_option("--chunk", chunk, "Circuits held in memory at once")->check(CLI::PositiveNumber);

    std::string dataset_path = "-", weighting = "auto", convention = "entanglement", csv_path;
    size_t replicates = 1000;
    auto *fit = app.add_subcommand("fit", "Fit the polarization decay");
    add_common(fit, false);
    fit->add_option("--dataset", dataset_path, "Dataset JSONL, - for stdin");
    fit->add_option("--bootstrap", replicates, "Bootstrap replicates (0 disables)");
    fit->add_option("--weighting", weighting, "auto, weighted or unweighted");
    fit->add_option("--convention", convention, "entanglement or average-gate");
    fit->add_option("--csv", csv_path, "Also write per-depth CSV here");

    size_t oracle_bootstrap = 0;
    bool free_B = false;
    auto *oracle = app.add_subcommand("oracle", "Exact epsilon_Omega from sampled core circuits");
    add_common(oracle, false);
    oracle->add_option("--noise", noise_path, "Noise model JSON");
    oracle->add_option("--bootstrap", oracle_bootstrap, "Bootstrap replicates for sigma");
    oracle->add_flag("--free-b", free_B, "Fit an additive constant");

    size_t k = 1, pairs = 0, n_circuits = 100, probes = 0;
    auto *scramble = app.add_subcommand("scramble", "Estimate the scrambling quantity of k-layer circuits");
    add_common(scramble, false);
    scramble->add_option("-k,--layers", k, "Layers per circuit");
    scramble->add_option("--pairs", pairs, "Random Pauli pairs (0 = all, n <= 4)");
    scramble->add_option("--circuits", n_circuits, "Circuits sampled");
    scramble->add_option("--probes", probes, "Random probes per circuit (0 = exhaustive)");

    PlannerInput plan_in;
    std::optional<double> beta;
    auto *plan = app.add_subcommand("plan", "Circuits needed for a target accuracy");
    add_common(plan, false);
    plan->add_option("--nu", plan_in.nu, "Failure probability");
    plan->add_option("--alpha", plan_in.alpha, "Relative accuracy");
    plan->add_option("--A", plan_in.A, "SPAM prefactor");
    plan->add_option("--gamma", plan_in.gamma_bar, "Expected layer polarization");
    plan->add_option("-d,--depth", plan_in.depth, "Benchmark depth");
    plan->add_option("--beta", beta, "Also plan the two-depth design at accuracy beta");

    size_t lsamples = 0;
    auto *lspec = app.add_subcommand("lspec", "Spectrum of the layer-averaged superchannel");
    add_common(lspec, false);
    lspec->add_option("--noise", noise_path, "Noise model JSON");
    lspec->add_option("--samples", lsamples, "Monte Carlo layers instead of enumeration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*design) {
            return cmd_design(common);
        }
        if (*simulate) {
            return cmd_simulate(common, circuits_path, noise_path, shots, chunk);
        }
        if (*fit) {
            return cmd_fit(common, dataset_path, replicates, weighting, convention, csv_path);
        }
        if (*oracle) {
            return cmd_oracle(common, noise_path, oracle_bootstrap, free_B);
        }
        if (*scramble) {
            return cmd_scramble(common, k, pairs, n_circuits, probes);
        }
        if (*plan) {
            return cmd_plan(common, plan_in, beta);
        }
        if (*lspec) {
            return cmd_lspec(common, noise_path, lsamples);
        }
    } catch (const FitError &e) {
        log_message(LogLevel::Error, e.what());
        return kFitFailure;
    } catch (const CapabilityError &e) {
        log_message(LogLevel::Error, e.what());
        return kCapability;
    } catch (const std::invalid_argument &e) {
        log_message(LogLevel::Error, e.what());
        return kValidation;
    } catch (const std::exception &e) {
        log_message(LogLevel::Error, e.what());
        return kOther;
    }
    return kOther;
}
