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

#include "qfault/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qfault {

using nlohmann::ordered_json;

namespace {

constexpr double kIntegerSnap = 1e-12;

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

std::string trials_label(const std::optional<uint64_t> &k) {
    return k.has_value() ? std::to_string(*k) : "unbounded";
}

std::string complex_text(Complex c) {
    if (std::abs(c.imag()) <= kIntegerSnap) {
        return fmt("%.10g", c.real());
    }
    if (std::abs(c.real()) <= kIntegerSnap) {
        return fmt("%.10g", c.imag()) + "i";
    }
    return fmt("%.10g", c.real()) + (c.imag() < 0 ? "-" : "+") + fmt("%.10g", std::abs(c.imag())) + "i";
}

}  // namespace

std::string basis_label(size_t index, size_t width) {
    std::string out(width, '0');
    for (size_t line = 0; line < width; line++) {
        if (line_bit(index, line, width)) {
            out[line] = '1';
        }
    }
    return out;
}

size_t parse_basis_label(std::string_view bits, size_t width) {
    if (bits.size() != width) {
        throw std::invalid_argument("input '" + std::string(bits) + "' must have exactly " + std::to_string(width) + " bit(s)");
    }
    size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("input '" + std::string(bits) + "' must contain only 0 and 1");
        }
        index = (index << 1) | static_cast<size_t>(c == '1');
    }
    return index;
}

ordered_json report_document(std::string_view command, const Circuit &circuit, ordered_json parameters, ordered_json result) {
    ordered_json gates = ordered_json::array();
    for (const auto &g : circuit.gates()) {
        gates.push_back(g.to_string());
    }
    ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command;
    doc["circuit"] = {{"width", circuit.width()}, {"gate_count", circuit.size()}, {"gates", gates}};
    doc["parameters"] = std::move(parameters);
    doc["result"] = std::move(result);
    return doc;
}

ordered_json matrix_json(const ComplexMatrix &m) {
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    for (size_t r = 0; r < m.dim(); r++) {
        ordered_json re_row = ordered_json::array();
        ordered_json im_row = ordered_json::array();
        for (size_t c = 0; c < m.dim(); c++) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"dim", m.dim()}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

ordered_json test_set_json(const Circuit &circuit, std::span<const FaultSpec> faults, const TestSetReport &report) {
    const size_t width = circuit.width();
    ordered_json test_set = ordered_json::array();
    for (size_t i : report.test_set) {
        test_set.push_back(basis_label(i, width));
    }
    ordered_json covered = ordered_json::array();
    for (const auto &c : report.covered) {
        ordered_json entry;
        entry["fault"] = fault_id(c.fault);
        entry["input"] = basis_label(c.input, width);
        entry["per_trial_p"] = c.per_trial_p;
        entry["class"] = detection_class_label(c.detection_class);
        entry["trials_needed"] = c.trials_needed.has_value() ? ordered_json(*c.trials_needed) : ordered_json(nullptr);
        covered.push_back(std::move(entry));
    }
    ordered_json undetectable = ordered_json::array();
    for (const auto &f : report.undetectable) {
        undetectable.push_back(fault_id(f));
    }
    ordered_json profiles = ordered_json::array();
    for (size_t f = 0; f < faults.size() && f < report.per_input_p.size(); f++) {
        std::string classes;
        for (double p : report.per_input_p[f]) {
            classes += detection_class_label(classify(p));
        }
        profiles.push_back({{"fault", fault_id(faults[f])}, {"per_trial_p", report.per_input_p[f]}, {"classes", classes}});
    }
    ordered_json out;
    out["confidence"] = report.confidence;
    out["test_set"] = std::move(test_set);
    out["covered"] = std::move(covered);
    out["undetectable"] = std::move(undetectable);
    out["profiles"] = std::move(profiles);
    return out;
}

ordered_json trial_json(const TrialPlan &plan, const TrialResult &result, std::span<const EscapePoint> curve) {
    ordered_json out;
    out["fault"] = fault_id(plan.fault);
    out["input"] = basis_label(plan.input_index, plan.circuit.width());
    out["trials"] = result.trials;
    out["detections"] = result.detections;
    out["p_hat"] = result.p_hat;
    out["analytic_p"] = result.analytic_p;
    out["abs_error"] = result.abs_error;
    if (!curve.empty()) {
        ordered_json points = ordered_json::array();
        for (const auto &pt : curve) {
            points.push_back({{"k", pt.k}, {"rate", pt.rate}, {"analytic", 1.0 - std::pow(1.0 - result.analytic_p, pt.k)}});
        }
        out["escape_curve"] = std::move(points);
    }
    return out;
}

ordered_json best_vector_json(const BestVector &best, size_t width) {
    ordered_json indices = ordered_json::array();
    ordered_json labels = ordered_json::array();
    for (size_t i : best.indices) {
        indices.push_back(i);
        labels.push_back(basis_label(i, width));
    }
    return {{"indices", std::move(indices)}, {"inputs", std::move(labels)}, {"per_trial_p", best.per_trial_p}};
}

std::string matrix_text(const ComplexMatrix &m) {
    bool integral = std::all_of(m.entries().begin(), m.entries().end(), [](const Complex &c) {
        return std::abs(c.imag()) <= kIntegerSnap && std::abs(c.real() - std::round(c.real())) <= kIntegerSnap;
    });
    std::vector<std::string> cells;
    cells.reserve(m.entries().size());
    size_t widest = 0;
    for (const auto &c : m.entries()) {
        std::string s = integral ? std::to_string(static_cast<long long>(std::round(c.real()))) : complex_text(c);
        if (s == "-0") {
            s = "0";
        }
        widest = std::max(widest, s.size());
        cells.push_back(std::move(s));
    }
    std::string out;
    for (size_t r = 0; r < m.dim(); r++) {
        for (size_t c = 0; c < m.dim(); c++) {
            const auto &s = cells[r * m.dim() + c];
            out += std::string(widest - s.size() + (c ? 1 : 0), ' ') + s;
        }
        out += '\n';
    }
    return out;
}

std::string test_set_text(const Circuit &circuit, std::span<const FaultSpec> faults, const TestSetReport &report) {
    const size_t width = circuit.width();
    std::ostringstream out;
    out << "test set:";
    if (report.test_set.empty()) {
        out << " (empty)";
    }
    for (size_t i : report.test_set) {
        out << " |" << basis_label(i, width) << ">";
    }
    out << "\nconfidence: " << fmt("%.10g", report.confidence) << "\n";

    out << "\nfault profiles (per-input class, inputs in ascending order):\n";
    for (size_t f = 0; f < faults.size() && f < report.per_input_p.size(); f++) {
        std::string classes;
        for (double p : report.per_input_p[f]) {
            classes += detection_class_label(classify(p));
        }
        out << "  " << fault_id(faults[f]) << "  " << classes << "\n";
    }

    out << "\ncovered faults:\n";
    for (const auto &c : report.covered) {
        out << "  " << fault_id(c.fault) << "  input |" << basis_label(c.input, width) << ">  p=" << fmt("%.10g", c.per_trial_p)
            << "  class " << detection_class_label(c.detection_class) << "  trials " << trials_label(c.trials_needed) << "\n";
    }
    out << "\nundetectable faults:";
    if (report.undetectable.empty()) {
        out << " none";
    }
    out << "\n";
    for (const auto &f : report.undetectable) {
        out << "  " << fault_id(f) << "\n";
    }
    return out.str();
}

std::string trial_text(const TrialPlan &plan, const TrialResult &result, std::span<const EscapePoint> curve) {
    std::ostringstream out;
    out << "fault: " << fault_id(plan.fault) << "\n";
    out << "input: |" << basis_label(plan.input_index, plan.circuit.width()) << ">\n";
    out << "rng: " << kRngAlgorithm << " seed " << plan.seed << "\n";
    out << "trials: " << result.trials << "\n";
    out << "detections: " << result.detections << "\n";
    out << "p_hat: " << fmt("%.10g", result.p_hat) << "\n";
    out << "analytic_p: " << fmt("%.10g", result.analytic_p) << "\n";
    out << "abs_error: " << fmt("%.3g", result.abs_error) << "\n";
    if (!curve.empty()) {
        out << "escape curve (k, empirical, analytic):\n";
        for (const auto &pt : curve) {
            out << "  " << pt.k << "  " << fmt("%.6f", pt.rate) << "  "
                << fmt("%.6f", 1.0 - std::pow(1.0 - result.analytic_p, static_cast<double>(pt.k))) << "\n";
        }
    }
    return out.str();
}

std::string best_vector_text(const BestVector &best, size_t width) {
    std::ostringstream out;
    out << "best test vectors:";
    for (size_t i : best.indices) {
        out << " |" << basis_label(i, width) << ">";
    }
    out << "\nper_trial_p: " << fmt("%.10g", best.per_trial_p) << "\n";
    return out.str();
}

}  // namespace qfault
