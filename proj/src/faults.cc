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

#include "qfault/faults.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qfault {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_gate_index(const Circuit &circuit, size_t gate) {
    if (gate >= circuit.size()) {
        throw std::invalid_argument(
            "gate index " + std::to_string(gate) + " out of range for a circuit of " + std::to_string(circuit.size()) + " gate(s)");
    }
}

void require_line(const Circuit &circuit, size_t line) {
    if (line >= circuit.width()) {
        throw std::invalid_argument("line " + std::to_string(line) + " out of range for width " + std::to_string(circuit.width()));
    }
}

// Shortest representation that round-trips.
std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

size_t to_index(std::string_view token, std::string_view id) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("malformed fault id '" + std::string(id) + "': expected an integer, got '" +
                                    std::string(token) + "'");
    }
    return value;
}

double to_real(std::string_view token, std::string_view id) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("malformed fault id '" + std::string(id) + "': expected a number, got '" +
                                    std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t end = text.find(sep, start);
        out.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return out;
        }
        start = end + 1;
    }
}

std::string stuck_state_id(const QubitState &s) {
    if (s == QubitState::zero()) {
        return "0";
    }
    if (s == QubitState::one()) {
        return "1";
    }
    if (s == QubitState::plus()) {
        return "+";
    }
    if (s == QubitState::minus()) {
        return "-";
    }
    return "(" + format_double(s.alpha.real()) + "," + format_double(s.alpha.imag()) + "," + format_double(s.beta.real()) +
           "," + format_double(s.beta.imag()) + ")";
}

}  // namespace

QubitState QubitState::zero() {
    return {1.0, 0.0};
}
QubitState QubitState::one() {
    return {0.0, 1.0};
}
QubitState QubitState::plus() {
    double r = 1.0 / std::sqrt(2.0);
    return {r, r};
}
QubitState QubitState::minus() {
    double r = 1.0 / std::sqrt(2.0);
    return {r, -r};
}

void validate_fault(const Circuit &circuit, const FaultSpec &fault) {
    std::visit(overloaded{
                   [&](const MissingGate &f) { require_gate_index(circuit, f.gate); },
                   [&](const MissingGates &f) {
                       if (f.gates.size() < 2) {
                           throw std::invalid_argument("mmgf needs at least two gates; use smgf for one");
                       }
                       for (size_t k = 0; k < f.gates.size(); k++) {
                           require_gate_index(circuit, f.gates[k]);
                           if (k > 0 && f.gates[k - 1] >= f.gates[k]) {
                               throw std::invalid_argument("mmgf gate indices must be distinct and ascending");
                           }
                       }
                   },
                   [&](const RepeatedGate &f) {
                       require_gate_index(circuit, f.gate);
                       if (f.multiplicity < 2) {
                           throw std::invalid_argument("rgf multiplicity must be at least 2");
                       }
                   },
                   [&](const PartialGate &f) {
                       require_gate_index(circuit, f.gate);
                       if (f.replacement.max_line() >= circuit.width()) {
                           throw std::invalid_argument("pgf replacement does not fit the circuit width");
                       }
                   },
                   [&](const CrossPoint &f) {
                       require_gate_index(circuit, f.gate);
                       require_line(circuit, f.line);
                       const Gate &g = circuit.gates()[f.gate];
                       if (f.mode == CrossPointMode::kRemove && !g.has_control(f.line)) {
                           throw std::invalid_argument("cross-point removal: line " + std::to_string(f.line) +
                                                       " is not a control of gate " + std::to_string(f.gate));
                       }
                       if (f.mode == CrossPointMode::kAdd && g.touches(f.line)) {
                           throw std::invalid_argument("cross-point addition: line " + std::to_string(f.line) +
                                                       " is already used by gate " + std::to_string(f.gate));
                       }
                   },
                   [&](const StuckAt &f) {
                       require_line(circuit, f.line);
                       double n2 = std::norm(f.state.alpha) + std::norm(f.state.beta);
                       if (std::abs(n2 - 1.0) > kTolerance) {
                           throw std::invalid_argument("stuck-at state is not normalized");
                       }
                   },
               },
               fault);
}

std::string fault_id(const FaultSpec &fault) {
    return std::visit(overloaded{
                          [](const MissingGate &f) { return "smgf:" + std::to_string(f.gate); },
                          [](const MissingGates &f) {
                              std::string out = "mmgf:";
                              for (size_t k = 0; k < f.gates.size(); k++) {
                                  out += (k ? "," : "") + std::to_string(f.gates[k]);
                              }
                              return out;
                          },
                          [](const RepeatedGate &f) {
                              return "rgf:" + std::to_string(f.gate) + "x" + std::to_string(f.multiplicity);
                          },
                          [](const PartialGate &f) {
                              return "pgf:" + std::to_string(f.gate) + "=" + f.replacement.to_string();
                          },
                          [](const CrossPoint &f) {
                              return std::string("cross:") + (f.mode == CrossPointMode::kAdd ? "+" : "-") +
                                     std::to_string(f.gate) + "@" + std::to_string(f.line);
                          },
                          [](const StuckAt &f) {
                              return "stuck:" + std::to_string(f.line) + "=" + stuck_state_id(f.state);
                          },
                      },
                      fault);
}

FaultSpec parse_fault_id(std::string_view id, const Circuit &circuit) {
    size_t colon = id.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("malformed fault id '" + std::string(id) + "': missing ':'");
    }
    std::string_view kind = id.substr(0, colon);
    std::string_view rest = id.substr(colon + 1);

    FaultSpec fault;
    if (kind == "smgf") {
        fault = MissingGate{to_index(rest, id)};
    } else if (kind == "mmgf") {
        MissingGates f;
        for (auto part : split(rest, ',')) {
            f.gates.push_back(to_index(part, id));
        }
        fault = f;
    } else if (kind == "rgf") {
        size_t x = rest.find('x');
        if (x == std::string_view::npos) {
            throw std::invalid_argument("malformed fault id '" + std::string(id) + "': expected rgf:<g>x<t>");
        }
        fault = RepeatedGate{to_index(rest.substr(0, x), id), to_index(rest.substr(x + 1), id)};
    } else if (kind == "pgf") {
        size_t eq = rest.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("malformed fault id '" + std::string(id) + "': expected pgf:<g>=<gate>");
        }
        std::string statement(rest.substr(eq + 1));
        // Underscores may stand in for spaces so the id survives shell quoting.
        std::replace(statement.begin(), statement.end(), '_', ' ');
        Gate replacement = [&] {
            try {
                return parse_gate_statement(statement, circuit.width());
            } catch (const CircuitParseError &ex) {
                throw std::invalid_argument("malformed pgf replacement '" + statement + "': " + ex.what());
            }
        }();
        fault = PartialGate{to_index(rest.substr(0, eq), id), std::move(replacement)};
    } else if (kind == "cross") {
        if (rest.empty() || (rest[0] != '+' && rest[0] != '-')) {
            throw std::invalid_argument("malformed fault id '" + std::string(id) + "': expected cross:+<g>@<line> or cross:-<g>@<line>");
        }
        CrossPointMode mode = rest[0] == '+' ? CrossPointMode::kAdd : CrossPointMode::kRemove;
        size_t at = rest.find('@');
        if (at == std::string_view::npos) {
            throw std::invalid_argument("malformed fault id '" + std::string(id) + "': missing '@<line>'");
        }
        fault = CrossPoint{to_index(rest.substr(1, at - 1), id), to_index(rest.substr(at + 1), id), mode};
    } else if (kind == "stuck") {
        size_t eq = rest.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("malformed fault id '" + std::string(id) + "': expected stuck:<line>=<state>");
        }
        size_t line = to_index(rest.substr(0, eq), id);
        std::string_view state = rest.substr(eq + 1);
        QubitState s;
        if (state == "0") {
            s = QubitState::zero();
        } else if (state == "1") {
            s = QubitState::one();
        } else if (state == "+") {
            s = QubitState::plus();
        } else if (state == "-") {
            s = QubitState::minus();
        } else if (state.size() >= 2 && state.front() == '(' && state.back() == ')') {
            auto parts = split(state.substr(1, state.size() - 2), ',');
            if (parts.size() != 4) {
                throw std::invalid_argument("malformed fault id '" + std::string(id) + "': stuck state needs 4 numbers");
            }
            s = {{to_real(parts[0], id), to_real(parts[1], id)}, {to_real(parts[2], id), to_real(parts[3], id)}};
        } else {
            throw std::invalid_argument("malformed fault id '" + std::string(id) + "': unknown stuck state '" + std::string(state) + "'");
        }
        fault = StuckAt{line, s};
    } else {
        throw std::invalid_argument("unknown fault class '" + std::string(kind) + "' in '" + std::string(id) + "'");
    }
    validate_fault(circuit, fault);
    return fault;
}

FaultyCircuit apply_fault(const Circuit &circuit, const FaultSpec &fault) {
    validate_fault(circuit, fault);
    std::vector<Gate> gates = circuit.gates();
    std::optional<StuckAt> stuck;
    std::visit(overloaded{
                   [&](const MissingGate &f) { gates.erase(gates.begin() + f.gate); },
                   [&](const MissingGates &f) {
                       for (auto it = f.gates.rbegin(); it != f.gates.rend(); ++it) {
                           gates.erase(gates.begin() + *it);
                       }
                   },
                   [&](const RepeatedGate &f) {
                       Gate copy = gates[f.gate];
                       gates.insert(gates.begin() + f.gate, f.multiplicity - 1, copy);
                   },
                   [&](const PartialGate &f) { gates[f.gate] = f.replacement; },
                   [&](const CrossPoint &f) {
                       gates[f.gate] = f.mode == CrossPointMode::kAdd ? gates[f.gate].with_control_added(f.line)
                                                                      : gates[f.gate].with_control_removed(f.line);
                   },
                   [&](const StuckAt &f) { stuck = f; },
               },
               fault);
    Circuit faulty(circuit.width(), std::move(gates));
    ComplexMatrix unitary = total_matrix(faulty);
    return FaultyCircuit{std::move(faulty), stuck, std::move(unitary)};
}

StateVector faulty_input(const FaultyCircuit &faulty, size_t index) {
    size_t dim = faulty.circuit.dim();
    if (index >= dim) {
        throw std::out_of_range("input index " + std::to_string(index) + " out of range for dimension " + std::to_string(dim));
    }
    if (!faulty.stuck.has_value()) {
        return StateVector::basis(dim, index);
    }
    size_t width = faulty.circuit.width();
    size_t bit = size_t{1} << (width - 1 - faulty.stuck->line);
    std::vector<Complex> amps(dim);
    amps[index & ~bit] = faulty.stuck->state.alpha;
    amps[index | bit] = faulty.stuck->state.beta;
    return StateVector(std::move(amps));
}

StateVector faulty_output(const FaultyCircuit &faulty, size_t index) {
    return apply(faulty.unitary, faulty_input(faulty, index));
}

std::vector<FaultSpec> enumerate_faults(const Circuit &circuit, const FaultEnumConfig &config) {
    std::vector<FaultSpec> out;
    auto push = [&](FaultSpec f) {
        if (std::find(out.begin(), out.end(), f) == out.end()) {
            out.push_back(std::move(f));
        }
    };
    size_t m = circuit.size();

    if (config.include_smgf) {
        for (size_t g = 0; g < m; g++) {
            push(MissingGate{g});
        }
    }

    // Subsets of each size in lexicographic order.
    std::vector<size_t> subset;
    std::function<void(size_t, size_t)> subsets = [&](size_t start, size_t size) {
        if (subset.size() == size) {
            push(MissingGates{subset});
            return;
        }
        for (size_t g = start; g < m; g++) {
            subset.push_back(g);
            subsets(g + 1, size);
            subset.pop_back();
        }
    };
    for (size_t size = 2; size <= std::min(config.mmgf_max_cardinality, m); size++) {
        subsets(0, size);
    }

    std::vector<size_t> multiplicities;
    for (size_t t : config.rgf_multiplicities) {
        if (t < 2) {
            throw std::invalid_argument("rgf multiplicity must be at least 2");
        }
        if (std::find(multiplicities.begin(), multiplicities.end(), t) == multiplicities.end()) {
            multiplicities.push_back(t);
        }
    }
    std::sort(multiplicities.begin(), multiplicities.end());
    for (size_t g = 0; g < m; g++) {
        for (size_t t : multiplicities) {
            push(RepeatedGate{g, t});
        }
    }

    for (const auto &p : config.pgf_replacements) {
        validate_fault(circuit, p);
        push(p);
    }

    if (config.include_crosspoint) {
        for (size_t g = 0; g < m; g++) {
            const Gate &gate = circuit.gates()[g];
            for (size_t line = 0; line < circuit.width(); line++) {
                if (gate.has_control(line)) {
                    push(CrossPoint{g, line, CrossPointMode::kRemove});
                } else if (!gate.touches(line)) {
                    push(CrossPoint{g, line, CrossPointMode::kAdd});
                }
            }
        }
    }

    for (size_t line = 0; line < circuit.width(); line++) {
        for (const auto &s : config.stuck_states) {
            StuckAt f{line, s};
            validate_fault(circuit, f);
            push(f);
        }
    }
    return out;
}

}  // namespace qfault
