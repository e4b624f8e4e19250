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

#include <charconv>
#include <sstream>

#include "qfault/circuit.h"

namespace qfault {

namespace {

std::vector<std::string_view> split_tokens(std::string_view text, std::string_view separators) {
    std::vector<std::string_view> out;
    size_t k = 0;
    while (k < text.size()) {
        size_t start = text.find_first_not_of(separators, k);
        if (start == std::string_view::npos) {
            break;
        }
        size_t end = text.find_first_of(separators, start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        out.push_back(text.substr(start, end - start));
        k = end;
    }
    return out;
}

size_t parse_index(std::string_view token, size_t line_number, const char *what) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw CircuitParseError(line_number, "expected a non-negative integer " + std::string(what) + ", got '" +
                                                 std::string(token) + "'");
    }
    return value;
}

double parse_real(std::string_view token, size_t line_number) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw CircuitParseError(line_number, "malformed matrix entry '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

CircuitParseError::CircuitParseError(size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {
}

Gate parse_gate_statement(std::string_view statement, size_t width, size_t line_number) {
    std::string_view body = statement;
    std::string_view extra;
    if (size_t at = statement.find('@'); at != std::string_view::npos) {
        body = statement.substr(0, at);
        extra = statement.substr(at + 1);
        if (extra.find('@') != std::string_view::npos) {
            throw CircuitParseError(line_number, "more than one '@' in statement");
        }
    }

    auto tokens = split_tokens(body, " \t\r");
    if (tokens.empty()) {
        throw CircuitParseError(line_number, "missing gate name");
    }
    std::string name(tokens[0]);
    auto kind = gate_kind_from_name(name);
    if (!kind.has_value()) {
        throw CircuitParseError(line_number, "unknown gate '" + name + "'");
    }

    size_t native = native_control_count(*kind);
    size_t arity = target_arity(*kind);
    size_t matrix_values = *kind == GateKind::U1 ? 8 : 0;
    size_t expected = 1 + native + arity + matrix_values;
    if (tokens.size() != expected) {
        if (matrix_values != 0 && tokens.size() > 1 + arity) {
            throw CircuitParseError(line_number, "malformed u1 matrix: expected 8 real numbers, got " +
                                                     std::to_string(tokens.size() - 1 - arity));
        }
        throw CircuitParseError(line_number, name + " expects " + std::to_string(native + arity) + " line index(es), got " +
                                                 std::to_string(tokens.size() - 1));
    }

    auto check_line = [&](size_t line) {
        if (line >= width) {
            throw CircuitParseError(line_number, "line index " + std::to_string(line) + " out of range for " +
                                                     std::to_string(width) + " qubit(s)");
        }
        return line;
    };

    std::vector<size_t> controls;
    std::vector<size_t> targets;
    for (size_t k = 0; k < native; k++) {
        controls.push_back(check_line(parse_index(tokens[1 + k], line_number, "line index")));
    }
    for (size_t k = 0; k < arity; k++) {
        targets.push_back(check_line(parse_index(tokens[1 + native + k], line_number, "line index")));
    }
    if (!extra.empty() || statement.find('@') != std::string_view::npos) {
        auto extra_tokens = split_tokens(extra, " \t\r,");
        if (extra_tokens.empty()) {
            throw CircuitParseError(line_number, "'@' must be followed by control lines");
        }
        for (auto t : extra_tokens) {
            controls.push_back(check_line(parse_index(t, line_number, "control line")));
        }
    }

    std::optional<ComplexMatrix> custom;
    if (matrix_values != 0) {
        std::vector<Complex> entries;
        size_t first = 1 + arity;
        for (size_t k = 0; k < 4; k++) {
            entries.emplace_back(parse_real(tokens[first + 2 * k], line_number),
                                 parse_real(tokens[first + 2 * k + 1], line_number));
        }
        try {
            custom = ComplexMatrix(2, std::move(entries));
        } catch (const std::invalid_argument &ex) {
            throw CircuitParseError(line_number, std::string("malformed u1 matrix: ") + ex.what());
        }
        if (!is_unitary(*custom, kTolerance)) {
            throw CircuitParseError(line_number, "u1 matrix is not unitary");
        }
    }

    std::vector<size_t> all(controls);
    all.insert(all.end(), targets.begin(), targets.end());
    for (size_t a = 0; a < all.size(); a++) {
        for (size_t b = a + 1; b < all.size(); b++) {
            if (all[a] == all[b]) {
                throw CircuitParseError(line_number, "line " + std::to_string(all[a]) + " used twice in one gate");
            }
        }
    }

    try {
        return Gate(*kind, std::move(controls), std::move(targets), std::move(custom));
    } catch (const std::invalid_argument &ex) {
        throw CircuitParseError(line_number, ex.what());
    }
}

Circuit parse_circuit(std::istream &in) {
    std::optional<size_t> width;
    std::vector<Gate> gates;
    std::string raw;
    size_t line_number = 0;
    while (std::getline(in, raw)) {
        line_number++;
        std::string_view line(raw);
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_tokens(line, " \t\r");
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] == "qubits") {
            if (width.has_value()) {
                throw CircuitParseError(line_number, "duplicate 'qubits' statement");
            }
            if (tokens.size() != 2) {
                throw CircuitParseError(line_number, "'qubits' takes exactly one argument");
            }
            size_t n = parse_index(tokens[1], line_number, "qubit count");
            if (n < 1 || n > kMaxWidth) {
                throw CircuitParseError(line_number, "qubit count must be in [1, " + std::to_string(kMaxWidth) + "]");
            }
            width = n;
            continue;
        }
        if (!width.has_value()) {
            throw CircuitParseError(line_number, "'qubits <n>' must be the first statement");
        }
        gates.push_back(parse_gate_statement(line, *width, line_number));
    }
    if (!width.has_value()) {
        throw CircuitParseError(line_number, "missing 'qubits <n>' statement");
    }
    return Circuit(*width, std::move(gates));
}

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_circuit(in);
}

}  // namespace qfault
