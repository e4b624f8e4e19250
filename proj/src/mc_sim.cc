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

#include "qfault/mc_sim.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfault/atpg.h"

namespace qfault {

namespace {

constexpr double kBasisTolerance = 1e-8;

// Trials per RNG substream in estimate_detection.
constexpr uint64_t kChunkSize = 1 << 14;

// Stream-id domains so the two estimators never share substreams.
constexpr uint64_t kEstimateDomain = 0;
constexpr uint64_t kEscapeDomain = 1;

uint64_t stream_id(uint64_t domain, uint64_t a, uint64_t b) {
    SplitMix64 mix(domain ^ (a * 0xD1B54A32D192ED03ULL));
    return mix() ^ b;
}

struct Experiment {
    BornSampler sampler;
    double analytic_p;
};

Experiment prepare(const TrialPlan &plan) {
    if (plan.trials < 1) {
        throw std::invalid_argument("trial plan needs at least one trial");
    }
    if (plan.input_index >= plan.circuit.dim()) {
        throw std::out_of_range("input index " + std::to_string(plan.input_index) + " out of range");
    }
    ComplexMatrix fault_free = total_matrix(plan.circuit);
    FaultyCircuit faulty = apply_fault(plan.circuit, plan.fault);
    StateVector good = column(fault_free, plan.input_index);
    StateVector bad = faulty_output(faulty, plan.input_index);
    auto basis = complete_basis(good);
    double analytic = detection_profile(plan.circuit, fault_free, plan.fault)[plan.input_index].per_trial_p;
    return {BornSampler(bad, basis), analytic};
}

}  // namespace

SplitMix64 SplitMix64::substream(uint64_t seed, uint64_t stream) {
    SplitMix64 root(seed);
    uint64_t base = root();
    SplitMix64 mix(base ^ (stream * 0x9E3779B97F4A7C15ULL));
    return SplitMix64(mix());
}

std::vector<StateVector> complete_basis(const StateVector &first) {
    const size_t dim = first.dim();
    std::vector<std::vector<Complex>> vectors{std::vector<Complex>(first.amps().begin(), first.amps().end())};
    for (size_t e = 0; e < dim && vectors.size() < dim; e++) {
        std::vector<Complex> v(dim);
        v[e] = 1.0;
        // Two passes of modified Gram-Schmidt.
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &q : vectors) {
                Complex proj = inner_product(q, v);
                for (size_t k = 0; k < dim; k++) {
                    v[k] -= proj * q[k];
                }
            }
        }
        double norm = std::sqrt(std::abs(inner_product(v, v)));
        if (norm < kBasisTolerance) {
            continue;
        }
        for (auto &a : v) {
            a /= norm;
        }
        vectors.push_back(std::move(v));
    }
    std::vector<StateVector> out;
    out.reserve(vectors.size());
    for (auto &v : vectors) {
        out.emplace_back(std::move(v), kBasisTolerance);
    }
    return out;
}

BornSampler::BornSampler(const StateVector &state, std::span<const StateVector> basis) {
    const size_t dim = state.dim();
    if (basis.size() != dim) {
        throw std::invalid_argument("measurement basis must have " + std::to_string(dim) + " elements");
    }
    for (size_t a = 0; a < basis.size(); a++) {
        if (basis[a].dim() != dim) {
            throw std::invalid_argument("measurement basis dimension mismatch");
        }
        for (size_t b = a; b < basis.size(); b++) {
            Complex ip = inner_product(basis[a].amps(), basis[b].amps());
            if (std::abs(ip - Complex(a == b ? 1.0 : 0.0)) > kBasisTolerance) {
                throw std::invalid_argument("measurement basis is not orthonormal");
            }
        }
    }
    probabilities_.reserve(dim);
    cumulative_.reserve(dim);
    double acc = 0;
    for (const auto &b : basis) {
        double p = std::norm(inner_product(b.amps(), state.amps()));
        probabilities_.push_back(p);
        acc += p;
        cumulative_.push_back(acc);
    }
}

size_t BornSampler::sample(Rng &rng) const {
    // Scaling by the total absorbs rounding so the last bin is never skipped.
    double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        --it;
    }
    return static_cast<size_t>(it - cumulative_.begin());
}

size_t measure_in_basis(const StateVector &state, std::span<const StateVector> basis, Rng &rng) {
    return BornSampler(state, basis).sample(rng);
}

TrialResult estimate_detection(const TrialPlan &plan) {
    Experiment ex = prepare(plan);
    uint64_t detections = 0;
    for (uint64_t chunk = 0; chunk * kChunkSize < plan.trials; chunk++) {
        Rng rng = Rng::substream(plan.seed, stream_id(kEstimateDomain, chunk, 0));
        uint64_t count = std::min(kChunkSize, plan.trials - chunk * kChunkSize);
        for (uint64_t t = 0; t < count; t++) {
            detections += ex.sampler.sample(rng) != 0;
        }
    }
    double p_hat = static_cast<double>(detections) / static_cast<double>(plan.trials);
    return {detections, plan.trials, p_hat, ex.analytic_p, std::abs(p_hat - ex.analytic_p)};
}

std::vector<EscapePoint> escape_curve(const TrialPlan &plan, size_t k_max) {
    if (k_max < 1) {
        throw std::invalid_argument("escape curve needs k_max >= 1");
    }
    Experiment ex = prepare(plan);
    std::vector<EscapePoint> out;
    for (size_t k = 1; k <= k_max; k++) {
        uint64_t hit = 0;
        for (uint64_t batch = 0; batch < plan.trials; batch++) {
            Rng rng = Rng::substream(plan.seed, stream_id(kEscapeDomain, k, batch));
            for (size_t t = 0; t < k; t++) {
                if (ex.sampler.sample(rng) != 0) {
                    hit++;
                    break;
                }
            }
        }
        out.push_back({k, static_cast<double>(hit) / static_cast<double>(plan.trials)});
    }
    return out;
}

}  // namespace qfault
