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

#ifndef QFAULT_ATPG_H
#define QFAULT_ATPG_H

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qfault/circuit.h"
#include "qfault/faults.h"
#include "qfault/linalg.h"

namespace qfault {

inline constexpr double kDefaultConfidence = 0.99;

enum class DetectionClass { kDeterministic, kProbabilistic, kUndetectable };

/// "D", "P" or "U".
std::string_view detection_class_label(DetectionClass c);

/// D iff p >= 1 - kTolerance, U iff p <= kTolerance, P otherwise.
DetectionClass classify(double per_trial_p);

struct DetectionOutcome {
    FaultSpec fault;
    size_t input;
    /// |<fault-free output | faulty output>|^2.
    double fidelity;
    double per_trial_p;
    DetectionClass detection_class;
};

/// One outcome per basis input, in ascending input order.
std::vector<DetectionOutcome> detection_profile(const Circuit &circuit, const FaultSpec &fault);

/// Same, reusing a precomputed fault-free total matrix.
std::vector<DetectionOutcome> detection_profile(const Circuit &circuit, const ComplexMatrix &fault_free, const FaultSpec &fault);

/// Smallest k with 1 - (1 - p)^k >= gamma. std::nullopt means no finite
/// number of trials suffices (p <= kTolerance). Throws std::invalid_argument
/// unless 0 < gamma < 1 and 0 <= p <= 1.
std::optional<uint64_t> trials_needed(double per_trial_p, double gamma);

struct BestVector {
    std::vector<size_t> indices;
    double per_trial_p;
};

/// Basis inputs minimizing |g_ii|, i.e. where a missing gate is most likely
/// to be noticed. Ties within 1e-12 are all returned.
BestVector best_vector_for_gate(const ComplexMatrix &gate);

struct FaultCoverage {
    FaultSpec fault;
    size_t input;
    double per_trial_p;
    std::optional<uint64_t> trials_needed;
    DetectionClass detection_class;
};

struct TestSetReport {
    std::vector<size_t> test_set;
    /// Detectable faults, in input order, with the test vector covering them.
    std::vector<FaultCoverage> covered;
    std::vector<FaultSpec> undetectable;
    double confidence;
    /// per_input_p[f][i]: detection probability of the f-th input fault on
    /// basis input i.
    std::vector<std::vector<double>> per_input_p;
};

/// Greedy test-set selection. Every detectable fault is covered by a chosen
/// input achieving that fault's best per-trial probability. Among candidate
/// inputs the one with the highest such probability wins, then the one
/// detecting the most still-uncovered faults, then the lowest index.
TestSetReport generate_test_set(const Circuit &circuit, std::span<const FaultSpec> faults,
                                double gamma = kDefaultConfidence);

struct PartitionReport {
    size_t first_gate;
    Circuit subcircuit;
    TestSetReport report;
};

/// Splits the gate list at `boundaries` (strictly ascending, each in
/// [1, m)) and runs enumeration plus test-set generation per piece.
std::vector<PartitionReport> partition_atpg(const Circuit &circuit, std::span<const size_t> boundaries,
                                            const FaultEnumConfig &config, double gamma = kDefaultConfidence);

}  // namespace qfault

#endif
