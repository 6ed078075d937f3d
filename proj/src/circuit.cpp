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

#include <algorithm>
#include <charconv>

#include "birb/errors.hpp"

namespace birb {

GateLayer::GateLayer(size_t num_qubits, std::vector<GateInstance> gates) : n_(num_qubits) {
    for (auto &g : gates) {
        add(std::move(g.gate), std::move(g.qubits));
    }
}

void GateLayer::add(CliffordGate gate, std::vector<size_t> qubits) {
    validate_gate_qubits(gate, qubits, n_);
    for (const auto &existing : gates_) {
        for (size_t q : qubits) {
            if (std::find(existing.qubits.begin(), existing.qubits.end(), q) != existing.qubits.end()) {
                throw DomainError(
                    "gate " + gate.noise_key() + " overlaps gate " + existing.gate.noise_key() + " on qubit " +
                    std::to_string(q));
            }
        }
    }
    gates_.push_back(GateInstance{std::move(gate), std::move(qubits)});
}

void GateLayer::conjugate_inplace(PauliOperator &p) const {
    for (const auto &g : gates_) {
        conjugate_by_gate_inplace(p, g.gate, g.qubits);
    }
}

GateLayer GateLayer::inverse() const {
    GateLayer result(n_);
    for (const auto &g : gates_) {
        result.gates_.push_back(GateInstance{g.gate.inverse(), g.qubits});
    }
    return result;
}

std::string GateLayer::str() const {
    std::string out;
    for (size_t k = 0; k < gates_.size(); k++) {
        if (k) {
            out += ';';
        }
        out += gates_[k].gate.name();
        out += '(';
        for (size_t a = 0; a < gates_[k].qubits.size(); a++) {
            if (a) {
                out += ',';
            }
            out += std::to_string(gates_[k].qubits[a]);
        }
        out += ')';
    }
    return out;
}

Circuit::Circuit(size_t num_qubits, std::vector<GateLayer> layers) : n_(num_qubits) {
    for (auto &layer : layers) {
        append(std::move(layer));
    }
}

void Circuit::append(GateLayer layer) {
    if (layer.num_qubits() != n_) {
        throw DimensionError(
            "layer has " + std::to_string(layer.num_qubits()) + " qubits, circuit has " + std::to_string(n_));
    }
    layers_.push_back(std::move(layer));
}

Circuit Circuit::inverse() const {
    Circuit result(n_);
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
        result.layers_.push_back(it->inverse());
    }
    return result;
}

std::string Circuit::serialize() const {
    std::string out = "n=" + std::to_string(n_) + "\n";
    for (const auto &layer : layers_) {
        out += layer.str();
        out += '\n';
    }
    return out;
}

namespace {

class LineParser {
   public:
    LineParser(std::string_view text, size_t line) : text_(text), line_(line) {
    }

    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(msg, line_, pos_ + 1);
    }
    void skip_spaces() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) {
            pos_++;
        }
    }
    bool done() {
        skip_spaces();
        return pos_ >= text_.size();
    }
    void expect(char c) {
        skip_spaces();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        pos_++;
    }
    bool accept(char c) {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == c) {
            pos_++;
            return true;
        }
        return false;
    }
    std::string_view gate_name() {
        skip_spaces();
        size_t start = pos_;
        int bracket = 0;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '[') {
                bracket++;
            } else if (c == ']') {
                bracket--;
            } else if (bracket == 0 && (c == '(' || c == ';' || c == ' ')) {
                break;
            }
            pos_++;
        }
        if (start == pos_) {
            fail("expected a gate name");
        }
        return text_.substr(start, pos_ - start);
    }
    size_t integer() {
        skip_spaces();
        size_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc()) {
            fail("expected a qubit index");
        }
        pos_ = ptr - text_.data();
        return value;
    }
    size_t column() const {
        return pos_ + 1;
    }
    void set_pos(size_t p) {
        pos_ = p;
    }
    size_t pos() const {
        return pos_;
    }

   private:
    std::string_view text_;
    size_t line_;
    size_t pos_ = 0;
};

GateLayer parse_layer(std::string_view text, size_t n, size_t line) {
    GateLayer layer(n);
    LineParser p(text, line);
    if (p.done()) {
        return layer;
    }
    while (true) {
        p.skip_spaces();
        size_t name_start = p.pos();
        std::string_view name = p.gate_name();
        CliffordGate gate;
        try {
            gate = CliffordGate::from_name(name);
        } catch (const std::invalid_argument &) {
            throw ParseError("unknown gate '" + std::string(name) + "'", line, name_start + 1);
        }
        p.expect('(');
        std::vector<size_t> qubits;
        if (!p.accept(')')) {
            do {
                qubits.push_back(p.integer());
            } while (p.accept(','));
            p.expect(')');
        }
        try {
            layer.add(gate, qubits);
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what(), line, name_start + 1);
        }
        if (p.done()) {
            break;
        }
        p.expect(';');
    }
    return layer;
}

}  // namespace

Circuit Circuit::parse(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty() || !lines[0].starts_with("n=")) {
        throw ParseError("missing 'n=<int>' header", 1, 1);
    }
    size_t n = 0;
    auto header = lines[0].substr(2);
    while (!header.empty() && header.back() == '\r') {
        header.remove_suffix(1);
    }
    auto [ptr, ec] = std::from_chars(header.data(), header.data() + header.size(), n);
    if (ec != std::errc() || ptr != header.data() + header.size()) {
        throw ParseError("malformed qubit count in header", 1, 3);
    }
    Circuit c(n);
    for (size_t k = 1; k < lines.size(); k++) {
        c.layers_.push_back(parse_layer(lines[k], n, k + 1));
    }
    return c;
}

Circuit compose(const Circuit &c1, const Circuit &c2) {
    if (c1.num_qubits() != c2.num_qubits()) {
        throw DimensionError("cannot compose circuits with different qubit counts");
    }
    Circuit result = c1;
    for (const auto &layer : c2.layers()) {
        result.append(layer);
    }
    return result;
}

PauliOperator conjugate_by_layer(const PauliOperator &p, const GateLayer &layer) {
    if (p.num_qubits() != layer.num_qubits()) {
        throw DimensionError("Pauli and layer qubit counts differ");
    }
    PauliOperator result = p;
    layer.conjugate_inplace(result);
    return result;
}

PauliOperator conjugate_by_circuit(const PauliOperator &p, const Circuit &c) {
    if (p.num_qubits() != c.num_qubits()) {
        throw DimensionError(
            "Pauli has " + std::to_string(p.num_qubits()) + " qubits, circuit has " + std::to_string(c.num_qubits()));
    }
    PauliOperator result = p;
    for (const auto &layer : c.layers()) {
        layer.conjugate_inplace(result);
    }
    return result;
}

void GateSetSpec::validate(size_t num_qubits) const {
    for (const auto &name : single_qubit_gates) {
        CliffordGate g;
        try {
            g = CliffordGate::from_name(name);
        } catch (const std::invalid_argument &) {
            throw ConfigError("gate_set.single_qubit_gates: unknown gate '" + name + "'");
        }
        if (g.arity() != 1) {
            throw ConfigError("gate_set.single_qubit_gates: '" + name + "' is not a single-qubit gate");
        }
    }
    if (!connectivity.empty() || !two_qubit_gate.empty()) {
        CliffordGate g;
        try {
            g = CliffordGate::from_name(two_qubit_gate);
        } catch (const std::invalid_argument &) {
            throw ConfigError("gate_set.two_qubit_gate: unknown gate '" + two_qubit_gate + "'");
        }
        if (g.arity() != 2) {
            throw ConfigError("gate_set.two_qubit_gate: '" + two_qubit_gate + "' is not a two-qubit gate");
        }
    }
    for (size_t k = 0; k < connectivity.size(); k++) {
        auto [a, b] = connectivity[k];
        if (a >= num_qubits || b >= num_qubits) {
            throw ConfigError("gate_set.connectivity[" + std::to_string(k) + "]: qubit out of range");
        }
        if (a == b) {
            throw ConfigError("gate_set.connectivity[" + std::to_string(k) + "]: self loop");
        }
    }
}

std::vector<std::pair<size_t, size_t>> GateSetSpec::all_to_all(size_t num_qubits) {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t a = 0; a < num_qubits; a++) {
        for (size_t b = a + 1; b < num_qubits; b++) {
            edges.emplace_back(a, b);
        }
    }
    return edges;
}

std::vector<std::pair<size_t, size_t>> GateSetSpec::line(size_t num_qubits) {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t a = 0; a + 1 < num_qubits; a++) {
        edges.emplace_back(a, a + 1);
    }
    return edges;
}

}  // namespace birb
