// Copyright 2026 The qfault Authors
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

#include "qfault/circuit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <charconv>
#include <sstream>

namespace qfault {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    size_t arity;
    size_t native_controls;
    bool self_inverse;
};

constexpr std::array<KindInfo, 13> kKinds{{
    {GateKind::I, "i", 1, 0, true},
    {GateKind::X, "x", 1, 0, true},
    {GateKind::Y, "y", 1, 0, true},
    {GateKind::Z, "z", 1, 0, true},
    {GateKind::H, "h", 1, 0, true},
    {GateKind::S, "s", 1, 0, false},
    {GateKind::T, "t", 1, 0, false},
    {GateKind::CX, "cx", 1, 1, true},
    {GateKind::CZ, "cz", 1, 1, true},
    {GateKind::SWAP, "swap", 2, 0, true},
    {GateKind::CCX, "ccx", 1, 2, true},
    {GateKind::CSWAP, "cswap", 2, 1, true},
    {GateKind::U1, "u1", 1, 0, false},
}};

const KindInfo &info(GateKind kind) {
    return kKinds[static_cast<size_t>(kind)];
}

// The kind used to print a gate that has lost some of its native controls.
GateKind reduced_kind(GateKind kind, size_t controls) {
    switch (kind) {
        case GateKind::CX:
            return GateKind::X;
        case GateKind::CZ:
            return GateKind::Z;
        case GateKind::CCX:
            return controls == 1 ? GateKind::CX : GateKind::X;
        case GateKind::CSWAP:
            return GateKind::SWAP;
        default:
            return kind;
    }
}

// Shortest representation that round-trips.
std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
    return info(kind).name;
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

size_t target_arity(GateKind kind) {
    return info(kind).arity;
}

size_t native_control_count(GateKind kind) {
    return info(kind).native_controls;
}

bool is_self_inverse(GateKind kind) {
    return info(kind).self_inverse;
}

Gate::Gate(GateKind kind, std::vector<size_t> controls, std::vector<size_t> targets, std::optional<ComplexMatrix> custom)
    : kind_(kind), controls_(std::move(controls)), targets_(std::move(targets)), custom_(std::move(custom)) {
    std::string name(gate_kind_name(kind_));
    if (targets_.size() != target_arity(kind_)) {
        throw std::invalid_argument(
            name + " needs " + std::to_string(target_arity(kind_)) + " target(s), got " + std::to_string(targets_.size()));
    }
    std::sort(controls_.begin(), controls_.end());
    std::vector<size_t> lines(controls_);
    lines.insert(lines.end(), targets_.begin(), targets_.end());
    std::sort(lines.begin(), lines.end());
    if (std::adjacent_find(lines.begin(), lines.end()) != lines.end()) {
        throw std::invalid_argument(name + " uses a line more than once");
    }
    if (kind_ == GateKind::U1) {
        if (!custom_.has_value() || custom_->dim() != 2) {
            throw std::invalid_argument("u1 needs a 2x2 matrix");
        }
        if (!is_unitary(*custom_, kTolerance)) {
            throw std::invalid_argument("u1 matrix is not unitary");
        }
    } else if (custom_.has_value()) {
        throw std::invalid_argument(name + " does not take a custom matrix");
    }
}

bool Gate::has_control(size_t line) const {
    return std::binary_search(controls_.begin(), controls_.end(), line);
}

bool Gate::touches(size_t line) const {
    return has_control(line) || std::find(targets_.begin(), targets_.end(), line) != targets_.end();
}

size_t Gate::max_line() const {
    size_t m = *std::max_element(targets_.begin(), targets_.end());
    if (!controls_.empty()) {
        m = std::max(m, controls_.back());
    }
    return m;
}

Gate Gate::with_control_added(size_t line) const {
    if (touches(line)) {
        throw std::invalid_argument("line " + std::to_string(line) + " is already used by the gate");
    }
    auto controls = controls_;
    controls.push_back(line);
    return Gate(kind_, std::move(controls), targets_, custom_);
}

Gate Gate::with_control_removed(size_t line) const {
    if (!has_control(line)) {
        throw std::invalid_argument("line " + std::to_string(line) + " is not a control of the gate");
    }
    auto controls = controls_;
    controls.erase(std::find(controls.begin(), controls.end(), line));
    return Gate(kind_, std::move(controls), targets_, custom_);
}

ComplexMatrix Gate::core_matrix() const {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    switch (kind_) {
        case GateKind::I:
            return ComplexMatrix::identity(2);
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CCX:
            return {{0, 1}, {1, 0}};
        case GateKind::Y:
            return {{0, -i}, {i, 0}};
        case GateKind::Z:
        case GateKind::CZ:
            return {{1, 0}, {0, -1}};
        case GateKind::H:
            return {{r, r}, {r, -r}};
        case GateKind::S:
            return {{1, 0}, {0, i}};
        case GateKind::T:
            return {{1, 0}, {0, std::polar(1.0, M_PI / 4)}};
        case GateKind::SWAP:
        case GateKind::CSWAP:
            return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
        case GateKind::U1:
            return *custom_;
    }
    throw std::logic_error("unknown gate kind");
}

std::string Gate::to_string() const {
    size_t native = native_control_count(kind_);
    GateKind shown = controls_.size() >= native ? kind_ : reduced_kind(kind_, controls_.size());
    size_t leading = native_control_count(shown);

    std::ostringstream out;
    out << gate_kind_name(shown);
    for (size_t k = 0; k < leading; k++) {
        out << ' ' << controls_[k];
    }
    for (size_t t : targets_) {
        out << ' ' << t;
    }
    if (kind_ == GateKind::U1) {
        for (const auto &v : custom_->entries()) {
            out << ' ' << format_double(v.real()) << ' ' << format_double(v.imag());
        }
    }
    if (controls_.size() > leading) {
        out << " @ ";
        for (size_t k = leading; k < controls_.size(); k++) {
            out << (k == leading ? "" : ",") << controls_[k];
        }
    }
    return out.str();
}

Circuit::Circuit(size_t width, std::vector<Gate> gates) : width_(width), gates_(std::move(gates)) {
    if (width_ < 1 || width_ > kMaxWidth) {
        throw std::invalid_argument(
            "circuit width must be in [1, " + std::to_string(kMaxWidth) + "], got " + std::to_string(width_));
    }
    for (size_t k = 0; k < gates_.size(); k++) {
        if (gates_[k].max_line() >= width_) {
            throw std::invalid_argument("gate " + std::to_string(k) + " (" + gates_[k].to_string() +
                                        ") references a line outside width " + std::to_string(width_));
        }
    }
}

std::string Circuit::to_string() const {
    std::string out = "qubits " + std::to_string(width_) + "\n";
    for (const auto &g : gates_) {
        out += g.to_string();
        out += '\n';
    }
    return out;
}

ComplexMatrix embed_gate(const Gate &gate, size_t width) {
    if (gate.max_line() >= width) {
        throw std::invalid_argument("gate " + gate.to_string() + " does not fit width " + std::to_string(width));
    }
    size_t dim = size_t{1} << width;
    ComplexMatrix core = gate.core_matrix();
    const auto &targets = gate.targets();

    size_t control_mask = 0;
    for (size_t c : gate.controls()) {
        control_mask |= size_t{1} << (width - 1 - c);
    }
    size_t target_mask = 0;
    for (size_t t : targets) {
        target_mask |= size_t{1} << (width - 1 - t);
    }

    ComplexMatrix out(dim);
    for (size_t col = 0; col < dim; col++) {
        if ((col & control_mask) != control_mask) {
            out(col, col) = 1.0;
            continue;
        }
        // The first target is the most significant bit of the core index.
        size_t core_in = 0;
        for (size_t t : targets) {
            core_in = (core_in << 1) | static_cast<size_t>(line_bit(col, t, width));
        }
        for (size_t core_out = 0; core_out < core.dim(); core_out++) {
            size_t row = col & ~target_mask;
            for (size_t k = 0; k < targets.size(); k++) {
                size_t bit = (core_out >> (targets.size() - 1 - k)) & 1;
                row |= bit << (width - 1 - targets[k]);
            }
            out(row, col) = core(core_out, core_in);
        }
    }
    return out;
}

ComplexMatrix total_matrix(const Circuit &circuit) {
    const auto &gates = circuit.gates();
    if (gates.empty()) {
        return ComplexMatrix::identity(circuit.dim());
    }
    ComplexMatrix u = embed_gate(gates.front(), circuit.width());
    for (size_t k = 1; k < gates.size(); k++) {
        u = matmul(embed_gate(gates[k], circuit.width()), u);
    }
    return u;
}

}  // namespace qfault
