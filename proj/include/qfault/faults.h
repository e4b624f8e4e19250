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

#ifndef QFAULT_FAULTS_H
#define QFAULT_FAULTS_H

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfault/circuit.h"
#include "qfault/linalg.h"

namespace qfault {

/// Single missing gate.
struct MissingGate {
    size_t gate;
    bool operator==(const MissingGate &) const = default;
};

/// Two or more missing gates. Indices are sorted and distinct.
struct MissingGates {
    std::vector<size_t> gates;
    bool operator==(const MissingGates &) const = default;
};

/// The gate occurs `multiplicity` times in a row, the original included.
struct RepeatedGate {
    size_t gate;
    size_t multiplicity;
    bool operator==(const RepeatedGate &) const = default;
};

/// The gate is replaced by a defective variant.
struct PartialGate {
    size_t gate;
    Gate replacement;
    bool operator==(const PartialGate &) const = default;
};

enum class CrossPointMode { kRemove, kAdd };

/// A control point disappears from (kRemove) or appears on (kAdd) a gate.
struct CrossPoint {
    size_t gate;
    size_t line;
    CrossPointMode mode;
    bool operator==(const CrossPoint &) const = default;
};

/// Single-qubit state alpha|0> + beta|1>.
struct QubitState {
    Complex alpha;
    Complex beta;
    bool operator==(const QubitState &) const = default;

    static QubitState zero();
    static QubitState one();
    static QubitState plus();
    static QubitState minus();
};

/// The input of `line` is fixed at `state`, whatever the test vector says.
struct StuckAt {
    size_t line;
    QubitState state;
    bool operator==(const StuckAt &) const = default;
};

using FaultSpec = std::variant<MissingGate, MissingGates, RepeatedGate, PartialGate, CrossPoint, StuckAt>;

/// Throws std::invalid_argument if the fault cannot apply to the circuit.
void validate_fault(const Circuit &circuit, const FaultSpec &fault);

/// Identifier string, e.g. "smgf:0", "mmgf:0,2", "rgf:1x3", "pgf:0=cx 0 2",
/// "cross:-1@0", "stuck:2=+".
std::string fault_id(const FaultSpec &fault);

/// Inverse of fault_id. Validates against the circuit; throws
/// std::invalid_argument on malformed identifiers.
FaultSpec parse_fault_id(std::string_view id, const Circuit &circuit);

/// A circuit after fault injection. For stuck-at faults the gates are
/// untouched and `stuck` records the input replacement.
struct FaultyCircuit {
    Circuit circuit;
    std::optional<StuckAt> stuck;
    ComplexMatrix unitary;
};

FaultyCircuit apply_fault(const Circuit &circuit, const FaultSpec &fault);

/// Input state the faulty circuit actually sees for test vector |index>.
StateVector faulty_input(const FaultyCircuit &faulty, size_t index);

/// Output state of the faulty circuit for test vector |index>.
StateVector faulty_output(const FaultyCircuit &faulty, size_t index);

struct FaultEnumConfig {
    bool include_smgf = true;
    /// MMGF subsets of size 2..max; values below 2 disable MMGF.
    size_t mmgf_max_cardinality = 2;
    std::vector<size_t> rgf_multiplicities{2, 3};
    std::vector<QubitState> stuck_states{QubitState::zero(), QubitState::one(), QubitState::plus(), QubitState::minus()};
    bool include_crosspoint = false;
    std::vector<PartialGate> pgf_replacements;
};

/// Enumerates faults in a fixed order: SMGF, MMGF (by size then indices),
/// RGF (gate, multiplicity), PGF (as configured), cross-point (gate, line),
/// stuck-at (line, configured state order). Duplicates are dropped.
std::vector<FaultSpec> enumerate_faults(const Circuit &circuit, const FaultEnumConfig &config);

}  // namespace qfault

#endif
