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

#include "birb/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string_view>

#include "birb/errors.hpp"

namespace birb {

namespace cfg {

const Json &require(const Json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError(path + "." + key + ": missing required field");
    }
    return *it;
}

uint64_t get_uint(const Json &v, const std::string &path) {
    if (v.is_number_unsigned()) {
        return v.get<uint64_t>();
    }
    if (v.is_number_integer() && v.get<int64_t>() >= 0) {
        return static_cast<uint64_t>(v.get<int64_t>());
    }
    throw ConfigError(path + ": expected a non-negative integer");
}

double get_double(const Json &v, const std::string &path) {
    if (!v.is_number()) {
        throw ConfigError(path + ": expected a number");
    }
    return v.get<double>();
}

std::string get_string(const Json &v, const std::string &path) {
    if (!v.is_string()) {
        throw ConfigError(path + ": expected a string");
    }
    return v.get<std::string>();
}

bool get_bool(const Json &v, const std::string &path) {
    if (!v.is_boolean()) {
        throw ConfigError(path + ": expected true or false");
    }
    return v.get<bool>();
}

}  // namespace cfg

namespace {

template <typename F>
auto rethrow_at(const std::string &path, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::invalid_argument &e) {
        if (std::string_view(e.what()).starts_with(path)) {
            throw;
        }
        throw ConfigError(path + ": " + e.what());
    }
}

PauliOperator pauli_at(const Json &v, const std::string &path) {
    std::string text = cfg::get_string(v, path);
    try {
        return PauliOperator::from_str(text);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Json spam_to_json(size_t q, const SpamChannel &c) {
    return Json{{"qubit", q}, {"kind", spam_kind_name(c.kind)}, {"p_m", c.p_m}};
}

void read_spam(const Json &j, const std::string &path, NoiseModel &m, bool measurement) {
    if (!j.is_array()) {
        throw ConfigError(path + ": expected an array");
    }
    for (size_t i = 0; i < j.size(); i++) {
        std::string p = path + "[" + std::to_string(i) + "]";
        size_t q = cfg::get_uint(cfg::require(j[i], "qubit", p), p + ".qubit");
        SpamChannel c;
        c.kind = rethrow_at(p + ".kind", [&] { return parse_spam_kind(cfg::get_string(cfg::require(j[i], "kind", p), p + ".kind")); });
        c.p_m = cfg::get_double(cfg::require(j[i], "p_m", p), p + ".p_m");
        rethrow_at(p, [&] {
            if (measurement) {
                m.set_measurement(q, c);
            } else {
                m.set_prep(q, c);
            }
            return 0;
        });
    }
}

}  // namespace

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open file");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

GateSetSpec gate_set_from_json(const Json &j, size_t n, const std::string &path) {
    GateSetSpec g;
    g.single_qubit_gates = {"SX", "SY", "I"};
    g.connectivity = GateSetSpec::all_to_all(n);
    if (j.is_null()) {
        return g;
    }
    if (!j.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    if (j.contains("single_qubit_gates")) {
        const Json &s = j["single_qubit_gates"];
        if (!s.is_array()) {
            throw ConfigError(path + ".single_qubit_gates: expected an array");
        }
        g.single_qubit_gates.clear();
        for (size_t i = 0; i < s.size(); i++) {
            g.single_qubit_gates.push_back(
                cfg::get_string(s[i], path + ".single_qubit_gates[" + std::to_string(i) + "]"));
        }
    }
    if (j.contains("two_qubit_gate")) {
        g.two_qubit_gate = cfg::get_string(j["two_qubit_gate"], path + ".two_qubit_gate");
    }
    if (j.contains("connectivity")) {
        const Json &c = j["connectivity"];
        std::string p = path + ".connectivity";
        if (c.is_string()) {
            std::string kind = c.get<std::string>();
            if (kind == "all-to-all") {
                g.connectivity = GateSetSpec::all_to_all(n);
            } else if (kind == "line") {
                g.connectivity = GateSetSpec::line(n);
            } else if (kind == "none") {
                g.connectivity.clear();
            } else {
                throw ConfigError(p + ": expected all-to-all, line, none or an edge list");
            }
        } else if (c.is_array()) {
            g.connectivity.clear();
            for (size_t i = 0; i < c.size(); i++) {
                std::string pi = p + "[" + std::to_string(i) + "]";
                if (!c[i].is_array() || c[i].size() != 2) {
                    throw ConfigError(pi + ": expected a pair of qubit indices");
                }
                g.connectivity.emplace_back(cfg::get_uint(c[i][0], pi + "[0]"), cfg::get_uint(c[i][1], pi + "[1]"));
            }
        } else {
            throw ConfigError(p + ": expected a string or an edge list");
        }
    }
    rethrow_at(path, [&] {
        g.validate(n);
        return 0;
    });
    return g;
}

Json gate_set_to_json(const GateSetSpec &g) {
    Json edges = Json::array();
    for (auto [a, b] : g.connectivity) {
        edges.push_back({a, b});
    }
    return Json{{"single_qubit_gates", g.single_qubit_gates},
                {"two_qubit_gate", g.two_qubit_gate},
                {"connectivity", edges}};
}

OmegaSpec omega_from_json(const Json &j, size_t n, const std::string &path) {
    OmegaSpec o = OmegaSpec::standard(n, n == 1 ? 0.0 : 0.25);
    if (j.is_null()) {
        return o;
    }
    if (!j.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    if (j.contains("xi")) {
        o.xi = cfg::get_double(j["xi"], path + ".xi");
    }
    o.gate_set = gate_set_from_json(j.contains("gate_set") ? j["gate_set"] : Json(), n, path + ".gate_set");
    rethrow_at(path, [&] { return o.validate(); });
    return o;
}

Json omega_to_json(const OmegaSpec &o) {
    return Json{{"xi", o.xi}, {"gate_set", gate_set_to_json(o.gate_set)}};
}

ExperimentDesign design_from_json(const Json &j, const std::string &path) {
    ExperimentDesign d;
    d.num_qubits = cfg::get_uint(cfg::require(j, "n", path), path + ".n");
    if (d.num_qubits == 0) {
        throw ConfigError(path + ".n: must be >= 1");
    }
    if (j.contains("depths")) {
        const Json &ds = j["depths"];
        if (!ds.is_array() || ds.empty()) {
            throw ConfigError(path + ".depths: expected a non-empty array");
        }
        for (size_t i = 0; i < ds.size(); i++) {
            d.depths.push_back(cfg::get_uint(ds[i], path + ".depths[" + std::to_string(i) + "]"));
        }
    } else if (j.contains("max_exponent")) {
        d.depths = power_of_two_depths(cfg::get_uint(j["max_exponent"], path + ".max_exponent"));
    } else {
        throw ConfigError(path + ".depths: missing required field (or give max_exponent)");
    }
    d.circuits_per_depth = cfg::get_uint(cfg::require(j, "circuits_per_depth", path), path + ".circuits_per_depth");
    if (j.contains("seed")) {
        d.seed = cfg::get_uint(j["seed"], path + ".seed");
    }
    if (j.contains("variant")) {
        std::string v = cfg::get_string(j["variant"], path + ".variant");
        d.variant = rethrow_at(path + ".variant", [&] { return parse_variant(v); });
    }
    if (d.variant == BirbVariant::CliffordGroup && d.num_qubits > kDefaultCliffordCap) {
        throw CapabilityError(path + ".n: clifford-group-birb is capped at n=" + std::to_string(kDefaultCliffordCap));
    }
    d.omega = omega_from_json(j.contains("omega") ? j["omega"] : Json(), d.num_qubits, path + ".omega");
    return d;
}

Json design_to_json(const ExperimentDesign &d) {
    return Json{{"schema_version", kSchemaVersion},
                {"n", d.num_qubits},
                {"depths", d.depths},
                {"circuits_per_depth", d.circuits_per_depth},
                {"seed", d.seed},
                {"variant", variant_name(d.variant)},
                {"omega", omega_to_json(d.omega)}};
}

uint64_t local_pauli_index(const std::string &text, size_t k, const std::string &path) {
    if (text.size() != k) {
        throw ConfigError(path + ": Pauli '" + text + "' must have one letter per support qubit (" +
                          std::to_string(k) + ")");
    }
    uint64_t idx = 0;
    for (size_t j = 0; j < k; j++) {
        uint64_t d;
        switch (text[j]) {
            case 'I':
                d = 0;
                break;
            case 'X':
                d = 1;
                break;
            case 'Y':
                d = 2;
                break;
            case 'Z':
                d = 3;
                break;
            default:
                throw ConfigError(path + ": unexpected character in Pauli '" + text + "'");
        }
        idx |= d << (2 * j);
    }
    if (idx == 0) {
        throw ConfigError(path + ": generator Pauli must not be the identity");
    }
    return idx;
}

std::string local_pauli_text(uint64_t index, size_t k) {
    static const char letters[] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    for (size_t j = 0; j < k; j++) {
        s += letters[(index >> (2 * j)) & 3];
    }
    return s;
}

NoiseModel noise_from_json(const Json &j, const std::string &path) {
    size_t n = cfg::get_uint(cfg::require(j, "n", path), path + ".n");
    NoiseModel m(n);
    if (j.contains("random")) {
        const Json &r = j["random"];
        std::string rp = path + ".random";
        ModelFamily fam = rethrow_at(rp + ".family", [&] {
            return parse_model_family(cfg::get_string(cfg::require(r, "family", rp), rp + ".family"));
        });
        double p = cfg::get_double(cfg::require(r, "p", rp), rp + ".p");
        uint64_t seed = r.contains("seed") ? cfg::get_uint(r["seed"], rp + ".seed") : 0;
        RandomModelOptions opts;
        if (r.contains("literal_mixed_h")) {
            opts.literal_mixed_h = cfg::get_bool(r["literal_mixed_h"], rp + ".literal_mixed_h");
        }
        if (r.contains("chi")) {
            opts.chi = cfg::get_double(r["chi"], rp + ".chi");
        }
        GateSetSpec gs = gate_set_from_json(j.contains("gate_set") ? j["gate_set"] : Json(), n, path + ".gate_set");
        Rng rng = substream(seed, "noise-model");
        m = rethrow_at(rp, [&] { return sample_random_model(fam, n, p, gs, opts, rng); });
    }
    if (j.contains("gates")) {
        const Json &gates = j["gates"];
        if (!gates.is_array()) {
            throw ConfigError(path + ".gates: expected an array");
        }
        for (size_t i = 0; i < gates.size(); i++) {
            std::string gp = path + ".gates[" + std::to_string(i) + "]";
            std::string gate = cfg::get_string(cfg::require(gates[i], "gate", gp), gp + ".gate");
            const Json &qs = cfg::require(gates[i], "qubits", gp);
            if (!qs.is_array()) {
                throw ConfigError(gp + ".qubits: expected an array");
            }
            std::vector<size_t> qubits;
            for (size_t a = 0; a < qs.size(); a++) {
                qubits.push_back(cfg::get_uint(qs[a], gp + ".qubits[" + std::to_string(a) + "]"));
            }
            size_t k = qubits.size();
            std::vector<ErrorGenerator> gens;
            const Json &gj = cfg::require(gates[i], "generators", gp);
            if (!gj.is_array()) {
                throw ConfigError(gp + ".generators: expected an array");
            }
            for (size_t g = 0; g < gj.size(); g++) {
                std::string p = gp + ".generators[" + std::to_string(g) + "]";
                ErrorGenerator e;
                e.kind = rethrow_at(p + ".kind", [&] {
                    return parse_generator_kind(cfg::get_string(cfg::require(gj[g], "kind", p), p + ".kind"));
                });
                const Json &pj = cfg::require(gj[g], "paulis", p);
                if (e.two_pauli()) {
                    if (!pj.is_array() || pj.size() != 2) {
                        throw ConfigError(p + ".paulis: expected two Pauli strings");
                    }
                    e.p = local_pauli_index(cfg::get_string(pj[0], p + ".paulis[0]"), k, p + ".paulis[0]");
                    e.q = local_pauli_index(cfg::get_string(pj[1], p + ".paulis[1]"), k, p + ".paulis[1]");
                } else {
                    e.p = local_pauli_index(cfg::get_string(pj, p + ".paulis"), k, p + ".paulis");
                }
                e.rate = cfg::get_double(cfg::require(gj[g], "rate", p), p + ".rate");
                gens.push_back(e);
            }
            rethrow_at(gp, [&] {
                m.set_gate_error(gate, qubits, std::move(gens));
                return 0;
            });
        }
    }
    if (j.contains("layer_depolarizing")) {
        double g = cfg::get_double(j["layer_depolarizing"], path + ".layer_depolarizing");
        rethrow_at(path + ".layer_depolarizing", [&] {
            m.set_layer_depolarizing(g);
            return 0;
        });
    }
    if (j.contains("measurement")) {
        read_spam(j["measurement"], path + ".measurement", m, true);
    }
    if (j.contains("prep")) {
        read_spam(j["prep"], path + ".prep", m, false);
    }
    rethrow_at(path, [&] {
        m.validate();
        return 0;
    });
    return m;
}

Json noise_to_json(const NoiseModel &m) {
    Json gates = Json::array();
    for (const auto *e : m.gate_errors()) {
        size_t k = e->qubits.size();
        Json gens = Json::array();
        for (const auto &g : e->generators) {
            Json paulis = g.two_pauli() ? Json::array({local_pauli_text(g.p, k), local_pauli_text(g.q, k)})
                                        : Json(local_pauli_text(g.p, k));
            gens.push_back(Json{{"kind", generator_kind_name(g.kind)}, {"paulis", paulis}, {"rate", g.rate}});
        }
        gates.push_back(Json{{"gate", e->gate}, {"qubits", e->qubits}, {"generators", gens}});
    }
    Json j{{"schema_version", kSchemaVersion}, {"n", m.num_qubits()}, {"gates", gates}};
    if (m.layer_depolarizing() < 1.0) {
        j["layer_depolarizing"] = m.layer_depolarizing();
    }
    Json meas = Json::array(), prep = Json::array();
    for (size_t q = 0; q < m.num_qubits(); q++) {
        if (m.measurement(q).kind != SpamKind::None) {
            meas.push_back(spam_to_json(q, m.measurement(q)));
        }
        if (m.prep(q).kind != SpamKind::None) {
            prep.push_back(spam_to_json(q, m.prep(q)));
        }
    }
    if (!meas.empty()) {
        j["measurement"] = meas;
    }
    if (!prep.empty()) {
        j["prep"] = prep;
    }
    return j;
}

Json circuit_to_json(const DesignedCircuit &dc, uint64_t seed, const std::string &variant) {
    const BirbCircuit &bc = dc.circuit;
    return Json{{"schema_version", kSchemaVersion},
                {"id", dc.id},
                {"n", bc.num_qubits()},
                {"d", bc.benchmark_depth},
                {"variant", variant},
                {"seed", seed},
                {"initial", bc.initial.str()},
                {"target", bc.target.str()},
                {"circuit", bc.circuit.serialize()}};
}

DesignedCircuit circuit_from_json(const Json &j, const std::string &path) {
    DesignedCircuit dc;
    dc.id = cfg::get_uint(cfg::require(j, "id", path), path + ".id");
    size_t n = cfg::get_uint(cfg::require(j, "n", path), path + ".n");
    dc.circuit.benchmark_depth = cfg::get_uint(cfg::require(j, "d", path), path + ".d");
    dc.circuit.initial = pauli_at(cfg::require(j, "initial", path), path + ".initial");
    dc.circuit.target = pauli_at(cfg::require(j, "target", path), path + ".target");
    std::string text = cfg::get_string(cfg::require(j, "circuit", path), path + ".circuit");
    try {
        dc.circuit.circuit = Circuit::parse(text);
    } catch (const ParseError &e) {
        throw ConfigError(path + ".circuit: line " + std::to_string(e.line) + ", column " +
                          std::to_string(e.column) + ": " + e.what());
    }
    if (dc.circuit.circuit.num_qubits() != n || dc.circuit.target.num_qubits() != n ||
        dc.circuit.initial.num_qubits() != n) {
        throw ConfigError(path + ": qubit counts of n, circuit, initial and target disagree");
    }
    if (dc.circuit.circuit.depth() != dc.circuit.benchmark_depth + 2) {
        throw ConfigError(path + ".circuit: expected d + 2 layers");
    }
    return dc;
}

Json row_to_json(const DatasetRow &row, uint64_t seed, const std::string &engine) {
    Json j{{"schema_version", kSchemaVersion},
           {"id", row.id},
           {"n", row.num_qubits},
           {"d", row.depth},
           {"target", row.target.str()},
           {"N", row.shots},
           {"success_sum", row.success_sum}};
    if (row.exact) {
        j["exact"] = *row.exact;
    }
    j["seed"] = seed;
    j["engine"] = engine;
    return j;
}

DatasetRow row_from_json(const Json &j, const std::string &path) {
    cfg::require(j, "schema_version", path);
    DatasetRow r;
    r.id = cfg::get_uint(cfg::require(j, "id", path), path + ".id");
    r.num_qubits = cfg::get_uint(cfg::require(j, "n", path), path + ".n");
    r.depth = cfg::get_uint(cfg::require(j, "d", path), path + ".d");
    r.target = pauli_at(cfg::require(j, "target", path), path + ".target");
    r.shots = cfg::get_uint(cfg::require(j, "N", path), path + ".N");
    const Json &s = cfg::require(j, "success_sum", path);
    if (!s.is_number_integer()) {
        throw ConfigError(path + ".success_sum: expected an integer");
    }
    r.success_sum = s.get<int64_t>();
    if (static_cast<uint64_t>(std::llabs(r.success_sum)) > r.shots) {
        throw ConfigError(path + ".success_sum: |success_sum| exceeds N");
    }
    if (j.contains("exact")) {
        double e = cfg::get_double(j["exact"], path + ".exact");
        if (e < -1 - 1e-9 || e > 1 + 1e-9) {
            throw ConfigError(path + ".exact: must lie in [-1, 1]");
        }
        r.exact = e;
    }
    if (r.shots == 0 && !r.exact) {
        throw ConfigError(path + ": row has N = 0 and no exact value");
    }
    return r;
}

Dataset read_dataset(std::istream &in) {
    Dataset ds;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::string path = "line " + std::to_string(lineno);
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error &e) {
            throw ConfigError(path + ": " + e.what());
        }
        DatasetRow r = row_from_json(j, path);
        if (ds.rows.empty()) {
            ds.num_qubits = r.num_qubits;
            if (j.contains("seed")) {
                ds.seed = cfg::get_uint(j["seed"], path + ".seed");
            }
            if (j.contains("engine")) {
                ds.engine = cfg::get_string(j["engine"], path + ".engine");
            }
        } else if (r.num_qubits != ds.num_qubits) {
            throw ConfigError(path + ".n: rows mix qubit counts");
        }
        ds.rows.push_back(std::move(r));
    }
    return ds;
}

void write_dataset(std::ostream &out, const Dataset &ds) {
    for (const auto &r : ds.rows) {
        out << row_to_json(r, ds.seed, ds.engine).dump() << '\n';
    }
}

Json fit_report_json(const DecayFit &fit, const std::string &status) {
    Json depths = Json::array(), fbar = Json::array(), sig = Json::array();
    for (const auto &pt : fit.points) {
        depths.push_back(pt.depth);
        fbar.push_back(pt.f);
        sig.push_back(pt.sigma);
    }
    Json j{{"schema_version", kSchemaVersion},
           {"n", fit.num_qubits},
           {"depths", depths},
           {"fbar", fbar},
           {"fbar_sigma", sig},
           {"A", fit.A},
           {"p", fit.p},
           {"r_omega", fit.r_omega},
           {"r_omega_per_qubit", fit.r_omega_per_qubit},
           {"sigma",
            {{"A", fit.sigma_A},
             {"p", fit.sigma_p},
             {"r_omega", fit.sigma_r},
             {"replicates", fit.bootstrap_replicates},
             {"failures", fit.bootstrap_failures}}},
           {"convention", convention_name(fit.convention)},
           {"weighted", fit.weighted},
           {"residuals", fit.residuals},
           {"fit_status", status}};
    if (fit.free_B) {
        j["B"] = fit.B;
    }
    return j;
}

std::string fit_csv(const DecayFit &fit) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "d,fbar,sigma,count\n";
    for (const auto &pt : fit.points) {
        out << pt.depth << ',' << pt.f << ',' << pt.sigma << ',' << pt.count << '\n';
    }
    return out.str();
}

Json oracle_to_json(const EpsilonOmegaEstimate &e) {
    Json depths = Json::array(), gam = Json::array();
    for (const auto &pt : e.points) {
        depths.push_back(pt.depth);
        gam.push_back(pt.f);
    }
    Json j{{"schema_version", kSchemaVersion},
           {"n", e.num_qubits},
           {"epsilon_omega", e.epsilon},
           {"p_rc", e.p_rc},
           {"A", e.A},
           {"sigma", e.sigma},
           {"method", e.method},
           {"depths", depths},
           {"gamma_bar", gam}};
    if (e.free_B) {
        j["B"] = e.B;
    }
    return j;
}

Json lspec_to_json(const LSuperchannelReport &r) {
    Json ev = Json::array();
    for (const auto &mu : r.eigenvalues) {
        ev.push_back({mu.real(), mu.imag()});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"n", r.num_qubits},
                {"lambda", r.lambda},
                {"unit_eigenvalues", r.unit_eigenvalues},
                {"monte_carlo", r.monte_carlo},
                {"samples", r.samples},
                {"eigenvalues", ev}};
}

Json scrambling_to_json(const ScramblingReport &r) {
    Json pairs = Json::array();
    for (const auto &p : r.pairs) {
        pairs.push_back(Json{{"p", p.p.str()}, {"p_prime", p.p_prime.str()}, {"estimate", p.estimate}});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"k", r.k},
                {"delta_hat", r.delta_hat},
                {"circuits", r.circuits},
                {"probes", r.probes},
                {"pairs", pairs}};
}

}  // namespace birb
