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

#include "qfault/atpg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qfault {

namespace {

// Two detection probabilities closer than this are treated as the same rate.
constexpr double kRateTie = 1e-12;

}  // namespace

std::string_view detection_class_label(DetectionClass c) {
    switch (c) {
        case DetectionClass::kDeterministic:
            return "D";
        case DetectionClass::kProbabilistic:
            return "P";
        case DetectionClass::kUndetectable:
            return "U";
    }
    return "?";
}

DetectionClass classify(double per_trial_p) {
    if (per_trial_p >= 1 - kTolerance) {
        return DetectionClass::kDeterministic;
    }
    if (per_trial_p <= kTolerance) {
        return DetectionClass::kUndetectable;
    }
    return DetectionClass::kProbabilistic;
}

std::vector<DetectionOutcome> detection_profile(const Circuit &circuit, const FaultSpec &fault) {
    return detection_profile(circuit, total_matrix(circuit), fault);
}

std::vector<DetectionOutcome> detection_profile(const Circuit &circuit, const ComplexMatrix &fault_free, const FaultSpec &fault) {
    if (fault_free.dim() != circuit.dim()) {
        throw std::invalid_argument("fault-free matrix does not match the circuit width");
    }
    FaultyCircuit faulty = apply_fault(circuit, fault);
    std::vector<DetectionOutcome> out;
    out.reserve(circuit.dim());
    for (size_t i = 0; i < circuit.dim(); i++) {
        double f = fidelity(column(fault_free, i), faulty_output(faulty, i));
        double p = 1.0 - f;
        out.push_back({fault, i, f, p, classify(p)});
    }
    return out;
}

std::optional<uint64_t> trials_needed(double per_trial_p, double gamma) {
    if (!(gamma > 0 && gamma < 1)) {
        throw std::invalid_argument("confidence must lie in (0, 1), got " + std::to_string(gamma));
    }
    if (!(per_trial_p >= 0 && per_trial_p <= 1)) {
        throw std::invalid_argument("detection probability must lie in [0, 1], got " + std::to_string(per_trial_p));
    }
    if (per_trial_p >= 1 - kTolerance) {
        return 1;
    }
    if (per_trial_p <= kTolerance) {
        return std::nullopt;
    }
    auto reaches = [&](double k) { return 1.0 - std::pow(1.0 - per_trial_p, k) >= gamma; };
    double estimate = std::ceil(std::log1p(-gamma) / std::log1p(-per_trial_p));
    uint64_t k = static_cast<uint64_t>(std::max(1.0, estimate));
    // The closed form can land one off when the ratio is an integer.
    while (k > 1 && reaches(static_cast<double>(k - 1))) {
        k--;
    }
    while (!reaches(static_cast<double>(k))) {
        k++;
    }
    return k;
}

BestVector best_vector_for_gate(const ComplexMatrix &gate) {
    if (gate.dim() == 0) {
        throw std::invalid_argument("best_vector_for_gate needs a non-empty square matrix");
    }
    double lowest = std::abs(gate(0, 0));
    for (size_t i = 1; i < gate.dim(); i++) {
        lowest = std::min(lowest, std::abs(gate(i, i)));
    }
    BestVector best{{}, 0};
    for (size_t i = 0; i < gate.dim(); i++) {
        if (std::abs(gate(i, i)) - lowest <= kRateTie) {
            best.indices.push_back(i);
        }
    }
    best.per_trial_p = std::clamp(1.0 - std::norm(gate(best.indices.front(), best.indices.front())), 0.0, 1.0);
    return best;
}

TestSetReport generate_test_set(const Circuit &circuit, std::span<const FaultSpec> faults, double gamma) {
    if (faults.empty()) {
        throw std::invalid_argument("generate_test_set needs at least one fault");
    }
    if (!(gamma > 0 && gamma < 1)) {
        throw std::invalid_argument("confidence must lie in (0, 1), got " + std::to_string(gamma));
    }
    const size_t dim = circuit.dim();
    const ComplexMatrix fault_free = total_matrix(circuit);

    // p[f][i]: per-trial detection probability of fault f on input i.
    std::vector<std::vector<double>> p(faults.size());
    std::vector<double> best_p(faults.size());
    for (size_t f = 0; f < faults.size(); f++) {
        auto profile = detection_profile(circuit, fault_free, faults[f]);
        p[f].resize(dim);
        for (const auto &o : profile) {
            p[f][o.input] = o.per_trial_p;
        }
        best_p[f] = *std::max_element(p[f].begin(), p[f].end());
    }
    auto achieves_best = [&](size_t f, size_t i) { return p[f][i] >= best_p[f] - kRateTie; };

    TestSetReport report{{}, {}, {}, gamma, {}};
    std::vector<bool> pending(faults.size());
    for (size_t f = 0; f < faults.size(); f++) {
        pending[f] = classify(best_p[f]) != DetectionClass::kUndetectable;
    }

    while (std::find(pending.begin(), pending.end(), true) != pending.end()) {
        std::optional<size_t> chosen;
        double chosen_rate = 0;
        size_t chosen_coverage = 0;
        for (size_t i = 0; i < dim; i++) {
            double rate = -1;
            size_t coverage = 0;
            for (size_t f = 0; f < faults.size(); f++) {
                if (!pending[f]) {
                    continue;
                }
                if (achieves_best(f, i)) {
                    rate = std::max(rate, best_p[f]);
                }
                if (p[f][i] > kTolerance) {
                    coverage++;
                }
            }
            if (rate < 0) {
                continue;
            }
            bool better = !chosen.has_value() || rate > chosen_rate + kRateTie ||
                          (std::abs(rate - chosen_rate) <= kRateTie && coverage > chosen_coverage);
            if (better) {
                chosen = i;
                chosen_rate = rate;
                chosen_coverage = coverage;
            }
        }
        report.test_set.push_back(*chosen);
        for (size_t f = 0; f < faults.size(); f++) {
            if (pending[f] && achieves_best(f, *chosen)) {
                pending[f] = false;
            }
        }
    }

    for (size_t f = 0; f < faults.size(); f++) {
        if (classify(best_p[f]) == DetectionClass::kUndetectable) {
            report.undetectable.push_back(faults[f]);
            continue;
        }
        for (size_t i : report.test_set) {
            if (achieves_best(f, i)) {
                report.covered.push_back({faults[f], i, p[f][i], trials_needed(p[f][i], gamma), classify(p[f][i])});
                break;
            }
        }
    }
    report.per_input_p = std::move(p);
    return report;
}

std::vector<PartitionReport> partition_atpg(const Circuit &circuit, std::span<const size_t> boundaries,
                                            const FaultEnumConfig &config, double gamma) {
    const size_t m = circuit.size();
    for (size_t k = 0; k < boundaries.size(); k++) {
        if (boundaries[k] < 1 || boundaries[k] >= m) {
            throw std::invalid_argument("partition boundary " + std::to_string(boundaries[k]) + " outside [1, " +
                                        std::to_string(m) + ")");
        }
        if (k > 0 && boundaries[k] <= boundaries[k - 1]) {
            throw std::invalid_argument("partition boundaries must be strictly ascending");
        }
    }

    std::vector<size_t> cuts{0};
    cuts.insert(cuts.end(), boundaries.begin(), boundaries.end());
    cuts.push_back(m);

    std::vector<PartitionReport> out;
    for (size_t k = 0; k + 1 < cuts.size(); k++) {
        size_t begin = cuts[k];
        size_t end = cuts[k + 1];
        std::vector<Gate> gates(circuit.gates().begin() + static_cast<std::ptrdiff_t>(begin),
                                circuit.gates().begin() + static_cast<std::ptrdiff_t>(end));
        Circuit sub(circuit.width(), std::move(gates));

        FaultEnumConfig local = config;
        local.pgf_replacements.clear();
        for (const auto &pgf : config.pgf_replacements) {
            if (pgf.gate >= begin && pgf.gate < end) {
                local.pgf_replacements.push_back({pgf.gate - begin, pgf.replacement});
            }
        }
        auto faults = enumerate_faults(sub, local);
        TestSetReport report = faults.empty() ? TestSetReport{{}, {}, {}, gamma, {}} : generate_test_set(sub, faults, gamma);
        out.push_back({begin, std::move(sub), std::move(report)});
    }
    return out;
}

}  // namespace qfault
