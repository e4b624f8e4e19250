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

#ifndef QFAULT_MC_SIM_H
#define QFAULT_MC_SIM_H

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "qfault/circuit.h"
#include "qfault/faults.h"
#include "qfault/linalg.h"

namespace qfault {

/// SplitMix64 (Steele, Lea and Flood). Satisfies UniformRandomBitGenerator.
/// Independent substreams come from `substream(seed, stream)`.
class SplitMix64 {
   public:
    using result_type = uint64_t;

    explicit SplitMix64(uint64_t seed) : state_(seed) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<uint64_t>::max();
    }

    result_type operator()() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    static SplitMix64 substream(uint64_t seed, uint64_t stream);

   private:
    uint64_t state_;
};

using Rng = SplitMix64;

/// Name recorded in reports next to the seed.
inline constexpr std::string_view kRngAlgorithm = "splitmix64";

/// Orthonormal basis whose first element is `first`, completed from the
/// computational basis in ascending order; vectors whose residual norm
/// drops below 1e-8 are skipped.
std::vector<StateVector> complete_basis(const StateVector &first);

/// Samples measurement outcomes of a fixed state in a fixed orthonormal basis
/// by inverse CDF over the Born probabilities.
class BornSampler {
   public:
    /// Throws std::invalid_argument if the basis is not orthonormal within
    /// 1e-8, is incomplete, or dimensions disagree.
    BornSampler(const StateVector &state, std::span<const StateVector> basis);

    size_t sample(Rng &rng) const;

    const std::vector<double> &probabilities() const {
        return probabilities_;
    }

   private:
    std::vector<double> probabilities_;
    std::vector<double> cumulative_;
};

size_t measure_in_basis(const StateVector &state, std::span<const StateVector> basis, Rng &rng);

struct TrialPlan {
    Circuit circuit;
    FaultSpec fault;
    size_t input_index;
    uint64_t trials;
    uint64_t seed;
};

struct TrialResult {
    uint64_t detections;
    uint64_t trials;
    double p_hat;
    double analytic_p;
    double abs_error;
};

/// Measures the faulty output in a basis extending the fault-free output;
/// any outcome other than the fault-free element counts as a detection.
TrialResult estimate_detection(const TrialPlan &plan);

struct EscapePoint {
    size_t k;
    /// Fraction of k-trial batches with at least one detection.
    double rate;
};

/// For k = 1..k_max, runs plan.trials independent batches of k trials each.
std::vector<EscapePoint> escape_curve(const TrialPlan &plan, size_t k_max);

}  // namespace qfault

#endif
