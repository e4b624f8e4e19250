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

#ifndef QFAULT_CIRCUIT_H
#define QFAULT_CIRCUIT_H

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfault/linalg.h"

namespace qfault {

inline constexpr size_t kMaxWidth = 12;

enum class GateKind { I, X, Y, Z, H, S, T, CX, CZ, SWAP, CCX, CSWAP, U1 };

/// Lower-case circuit-file mnemonic ("x", "ccx", "u1", ...).
std::string_view gate_kind_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Number of target lines the kind's core unitary acts on (1 or 2).
size_t target_arity(GateKind kind);

/// Number of controls the built-in kind carries natively (CX: 1, CCX: 2, ...).
size_t native_control_count(GateKind kind);

/// True for kinds whose core unitary squares to identity.
bool is_self_inverse(GateKind kind);

/// A gate: a core unitary on `targets`, applied only when every line in
/// `controls` is 1. Built-in controlled kinds keep their controls in
/// `controls` too, so removing the last control of a CX leaves an X.
class Gate {
   public:
    /// Throws std::invalid_argument when controls and targets overlap, a line
    /// repeats, the target count does not match the kind, or a custom matrix
    /// is missing/non-unitary.
    Gate(GateKind kind, std::vector<size_t> controls, std::vector<size_t> targets,
         std::optional<ComplexMatrix> custom = std::nullopt);

    GateKind kind() const {
        return kind_;
    }
    /// Sorted ascending.
    const std::vector<size_t> &controls() const {
        return controls_;
    }
    const std::vector<size_t> &targets() const {
        return targets_;
    }
    const std::optional<ComplexMatrix> &custom() const {
        return custom_;
    }

    bool has_control(size_t line) const;
    bool touches(size_t line) const;
    size_t max_line() const;

    Gate with_control_added(size_t line) const;
    Gate with_control_removed(size_t line) const;

    /// The 2x2 or 4x4 unitary applied to the target lines.
    ComplexMatrix core_matrix() const;

    /// Circuit-file statement for this gate, e.g. "ccx 0 1 2" or "x 2 @ 0".
    std::string to_string() const;

    bool operator==(const Gate &other) const = default;

   private:
    GateKind kind_;
    std::vector<size_t> controls_;
    std::vector<size_t> targets_;
    std::optional<ComplexMatrix> custom_;
};

class Circuit {
   public:
    /// Throws std::invalid_argument when the width is outside [1, kMaxWidth]
    /// or a gate references a line >= width.
    explicit Circuit(size_t width, std::vector<Gate> gates = {});

    size_t width() const {
        return width_;
    }
    size_t dim() const {
        return size_t{1} << width_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    size_t size() const {
        return gates_.size();
    }

    std::string to_string() const;

    bool operator==(const Circuit &other) const = default;

   private:
    size_t width_;
    std::vector<Gate> gates_;
};

/// Full-width 2^n x 2^n matrix of a gate. Line 0 is the most significant
/// bit of the basis index.
ComplexMatrix embed_gate(const Gate &gate, size_t width);

/// U = embed(g_m) * ... * embed(g_1). The empty circuit gives the identity.
ComplexMatrix total_matrix(const Circuit &circuit);

/// Bit of `line` within basis index `index` for a circuit of `width` lines.
inline bool line_bit(size_t index, size_t line, size_t width) {
    return (index >> (width - 1 - line)) & 1;
}

class CircuitParseError : public std::runtime_error {
   public:
    CircuitParseError(size_t line, const std::string &message);
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

/// Reads the line-oriented circuit format:
///
///     qubits 3            # required first statement
///     h 0
///     cx 0 1
///     ccx 0 1 2
///     u1 2 re00 im00 re01 im01 re10 im10 re11 im11
///     x 2 @ 0,1           # extra controls
Circuit parse_circuit(std::istream &in);
Circuit parse_circuit(std::string_view text);

/// Parses one gate statement ("cx 0 1", "x 2 @ 0") for a circuit of the given
/// width. Errors are reported against `line_number`.
Gate parse_gate_statement(std::string_view statement, size_t width, size_t line_number = 0);

}  // namespace qfault

#endif
