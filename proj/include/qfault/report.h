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

#ifndef QFAULT_REPORT_H
#define QFAULT_REPORT_H

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qfault/atpg.h"
#include "qfault/circuit.h"
#include "qfault/faults.h"
#include "qfault/mc_sim.h"

namespace qfault {

inline constexpr std::string_view kToolName = "qfault";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Basis index rendered as a bitstring, line 0 leftmost: 2 of width 2 -> "10".
std::string basis_label(size_t index, size_t width);

/// Inverse of basis_label. Throws std::invalid_argument unless `bits` has
/// exactly `width` characters from {0, 1}.
size_t parse_basis_label(std::string_view bits, size_t width);

/// Machine-readable report skeleton:
///
///     {"tool", "version", "command", "circuit": {"width", "gate_count",
///      "gates"}, "parameters": {...}, "result": {...}}
///
/// Simulation reports add "rng": {"algorithm", "seed"}.
nlohmann::ordered_json report_document(std::string_view command, const Circuit &circuit, nlohmann::ordered_json parameters,
                                       nlohmann::ordered_json result);

nlohmann::ordered_json matrix_json(const ComplexMatrix &m);
nlohmann::ordered_json test_set_json(const Circuit &circuit, std::span<const FaultSpec> faults, const TestSetReport &report);
nlohmann::ordered_json trial_json(const TrialPlan &plan, const TrialResult &result, std::span<const EscapePoint> curve);
nlohmann::ordered_json best_vector_json(const BestVector &best, size_t width);

/// Matrix as aligned text; real integer-valued matrices print as integers.
std::string matrix_text(const ComplexMatrix &m);
std::string test_set_text(const Circuit &circuit, std::span<const FaultSpec> faults, const TestSetReport &report);
std::string trial_text(const TrialPlan &plan, const TrialResult &result, std::span<const EscapePoint> curve);
std::string best_vector_text(const BestVector &best, size_t width);

}  // namespace qfault

#endif
