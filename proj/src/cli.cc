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

#include "qfault/cli.h"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qfault/atpg.h"
#include "qfault/mc_sim.h"
#include "qfault/report.h"

namespace qfault {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Splits on commas that are not inside parentheses.
std::vector<std::string> split_top_level(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') {
            depth++;
        } else if (c == ')') {
            depth--;
        }
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

size_t selector_int(std::string_view token, std::string_view selector) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("malformed selector '" + std::string(selector) + "'");
    }
    return value;
}

QubitState selector_state(std::string_view token) {
    // Reuse the fault-id grammar for stuck states.
    Circuit one_line(1);
    auto fault = parse_fault_id("stuck:0=" + std::string(token), one_line);
    return std::get<StuckAt>(fault).state;
}

bool starts_selector(std::string_view token) {
    for (std::string_view kw : {"smgf", "mmgf", "rgf", "stuck", "cross"}) {
        if (token == kw || (token.size() > kw.size() && token.substr(0, kw.size()) == kw && token[kw.size()] == ':')) {
            return true;
        }
    }
    return false;
}

Circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open circuit file '" + path + "'");
    }
    try {
        return parse_circuit(in);
    } catch (const CircuitParseError &ex) {
        throw UsageError(path + ":" + std::to_string(ex.line()) + ": " + ex.what());
    }
}

struct Options {
    std::string format = "text";
    std::string out_path;
    std::string circuit_path;
    std::string selectors;
    std::vector<std::string> fault_ids;
    double confidence = kDefaultConfidence;
    std::vector<size_t> partition;
    std::string fault;
    std::string input;
    uint64_t trials = 10000;
    uint64_t seed = 42;
    size_t escape_k = 0;
};

std::vector<FaultSpec> selected_faults(const Circuit &circuit, const Options &opt) {
    FaultEnumConfig config = opt.selectors.empty() && opt.fault_ids.empty() ? FaultEnumConfig{}
                             : opt.selectors.empty()                        ? parse_fault_selectors("")
                                                                            : parse_fault_selectors(opt.selectors);
    auto faults = enumerate_faults(circuit, config);
    for (const auto &id : opt.fault_ids) {
        auto f = parse_fault_id(id, circuit);
        if (std::find(faults.begin(), faults.end(), f) == faults.end()) {
            faults.push_back(std::move(f));
        }
    }
    return faults;
}

ordered_json fault_parameters(const Options &opt) {
    ordered_json p;
    p["faults"] = opt.selectors.empty() && opt.fault_ids.empty() ? "default" : opt.selectors;
    p["fault_ids"] = opt.fault_ids;
    return p;
}

struct Rendered {
    std::string text;
    int status = kExitOk;
};

Rendered render(const Options &opt, const ordered_json &doc, std::string text, int status = kExitOk) {
    if (opt.format == "machine") {
        return {doc.dump(2) + "\n", status};
    }
    return {std::move(text), status};
}

Rendered cmd_matrix(const Options &opt) {
    Circuit c = load_circuit(opt.circuit_path);
    ComplexMatrix u = total_matrix(c);
    auto doc = report_document("matrix", c, ordered_json::object(), matrix_json(u));
    return render(opt, doc, matrix_text(u));
}

Rendered cmd_faults(const Options &opt) {
    Circuit c = load_circuit(opt.circuit_path);
    auto faults = selected_faults(c, opt);
    ordered_json ids = ordered_json::array();
    std::string text;
    for (const auto &f : faults) {
        ids.push_back(fault_id(f));
        text += fault_id(f) + "\n";
    }
    auto doc = report_document("faults", c, fault_parameters(opt), {{"faults", ids}});
    return render(opt, doc, text);
}

Rendered cmd_atpg(const Options &opt) {
    Circuit c = load_circuit(opt.circuit_path);
    auto params = fault_parameters(opt);
    params["confidence"] = opt.confidence;

    if (!opt.partition.empty()) {
        if (!opt.fault_ids.empty()) {
            throw UsageError("--fault cannot be combined with --partition; use --faults selectors");
        }
        FaultEnumConfig config = opt.selectors.empty() ? FaultEnumConfig{} : parse_fault_selectors(opt.selectors);
        auto parts = partition_atpg(c, opt.partition, config, opt.confidence);
        params["partition"] = opt.partition;
        ordered_json result = ordered_json::array();
        std::string text;
        bool any_undetectable = false;
        for (const auto &part : parts) {
            auto faults = enumerate_faults(part.subcircuit, config);
            any_undetectable = any_undetectable || !part.report.undetectable.empty();
            result.push_back({{"first_gate", part.first_gate},
                              {"gate_count", part.subcircuit.size()},
                              {"report", test_set_json(part.subcircuit, faults, part.report)}});
            text += "== partition at gate " + std::to_string(part.first_gate) + " (" + std::to_string(part.subcircuit.size()) +
                    " gate(s)) ==\n" + test_set_text(part.subcircuit, faults, part.report) + "\n";
        }
        auto doc = report_document("atpg", c, params, {{"partitions", result}});
        return render(opt, doc, text, any_undetectable ? kExitUndetectable : kExitOk);
    }

    auto faults = selected_faults(c, opt);
    if (faults.empty()) {
        throw UsageError("no faults selected");
    }
    auto report = generate_test_set(c, faults, opt.confidence);
    auto doc = report_document("atpg", c, params, test_set_json(c, faults, report));
    return render(opt, doc, test_set_text(c, faults, report), report.undetectable.empty() ? kExitOk : kExitUndetectable);
}

Rendered cmd_simulate(const Options &opt) {
    Circuit c = load_circuit(opt.circuit_path);
    FaultSpec fault = parse_fault_id(opt.fault, c);
    size_t input = parse_basis_label(opt.input, c.width());
    TrialPlan plan{c, fault, input, opt.trials, opt.seed};
    TrialResult result = estimate_detection(plan);
    std::vector<EscapePoint> curve;
    if (opt.escape_k > 0) {
        curve = escape_curve(plan, opt.escape_k);
    }
    ordered_json params;
    params["fault"] = opt.fault;
    params["input"] = opt.input;
    params["trials"] = opt.trials;
    params["escape_k"] = opt.escape_k;
    auto doc = report_document("simulate", c, params, trial_json(plan, result, curve));
    doc["rng"] = {{"algorithm", kRngAlgorithm}, {"seed", opt.seed}};
    return render(opt, doc, trial_text(plan, result, curve));
}

Rendered cmd_best_vector(const Options &opt) {
    Circuit c = load_circuit(opt.circuit_path);
    if (c.size() != 1) {
        throw UsageError("best-vector needs a circuit with exactly one gate, got " + std::to_string(c.size()));
    }
    BestVector best = best_vector_for_gate(embed_gate(c.gates().front(), c.width()));
    auto doc = report_document("best-vector", c, ordered_json::object(), best_vector_json(best, c.width()));
    return render(opt, doc, best_vector_text(best, c.width()));
}

}  // namespace

FaultEnumConfig parse_fault_selectors(std::string_view text) {
    FaultEnumConfig config;
    config.include_smgf = false;
    config.mmgf_max_cardinality = 0;
    config.rgf_multiplicities.clear();
    config.stuck_states.clear();
    config.include_crosspoint = false;

    // Group tokens: a selector keyword starts a new group, anything else
    // continues the previous one ("stuck:0,1,+" is one group).
    std::vector<std::vector<std::string>> groups;
    for (auto &token : split_top_level(text)) {
        if (token.empty()) {
            continue;
        }
        if (starts_selector(token)) {
            groups.push_back({token});
        } else if (!groups.empty() && groups.back().front().rfind("stuck", 0) == 0) {
            groups.back().push_back(token);
        } else {
            throw std::invalid_argument("unknown fault selector '" + token + "'");
        }
    }

    for (const auto &group : groups) {
        const std::string &head = group.front();
        size_t colon = head.find(':');
        std::string name = head.substr(0, colon);
        std::string arg = colon == std::string::npos ? "" : head.substr(colon + 1);
        if (name == "smgf" || name == "cross") {
            if (!arg.empty()) {
                throw std::invalid_argument("selector '" + name + "' takes no argument");
            }
            (name == "smgf" ? config.include_smgf : config.include_crosspoint) = true;
        } else if (name == "mmgf") {
            config.mmgf_max_cardinality = arg.empty() ? 2 : selector_int(arg, head);
            if (config.mmgf_max_cardinality < 2) {
                throw std::invalid_argument("mmgf cardinality must be at least 2");
            }
        } else if (name == "rgf") {
            size_t lo = 2;
            size_t hi = 3;
            if (!arg.empty()) {
                size_t dash = arg.find('-');
                lo = selector_int(arg.substr(0, dash), head);
                hi = dash == std::string::npos ? lo : selector_int(arg.substr(dash + 1), head);
            }
            if (lo < 2 || hi < lo) {
                throw std::invalid_argument("rgf multiplicities must form a range within [2, inf)");
            }
            for (size_t t = lo; t <= hi; t++) {
                config.rgf_multiplicities.push_back(t);
            }
        } else if (name == "stuck") {
            std::vector<std::string> states;
            if (!arg.empty()) {
                states.push_back(arg);
            }
            states.insert(states.end(), group.begin() + 1, group.end());
            if (states.empty()) {
                config.stuck_states = FaultEnumConfig{}.stuck_states;
            }
            for (const auto &s : states) {
                config.stuck_states.push_back(selector_state(s));
            }
        }
    }
    return config;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Fault testing and test-pattern generation for quantum circuits", "qfault"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--out", opt.out_path, "Write the report to this path instead of standard output");

    auto *matrix = app.add_subcommand("matrix", "Print the total circuit matrix");
    matrix->add_option("circuit", opt.circuit_path, "Circuit file")->required();

    auto add_fault_flags = [&](CLI::App *cmd) {
        cmd->add_option("--faults", opt.selectors, "Fault classes, e.g. smgf,mmgf:2,rgf:2-3,stuck:0,1,+,-,cross");
        cmd->add_option("--fault", opt.fault_ids, "Explicit fault identifier (repeatable)");
    };

    auto *faults = app.add_subcommand("faults", "List enumerated faults");
    faults->add_option("circuit", opt.circuit_path, "Circuit file")->required();
    add_fault_flags(faults);

    auto *atpg = app.add_subcommand("atpg", "Generate a test set");
    atpg->add_option("circuit", opt.circuit_path, "Circuit file")->required();
    add_fault_flags(atpg);
    atpg->add_option("--confidence", opt.confidence, "Target detection confidence in (0, 1)")
        ->check(CLI::Range(0.0, 1.0));
    atpg->add_option("--partition", opt.partition, "Gate indices at which to split the circuit")->delimiter(',');

    auto *simulate = app.add_subcommand("simulate", "Monte-Carlo estimate of a detection probability");
    simulate->add_option("circuit", opt.circuit_path, "Circuit file")->required();
    simulate->add_option("--fault", opt.fault, "Fault identifier")->required();
    simulate->add_option("--input", opt.input, "Test vector as a bitstring, line 0 first")->required();
    simulate->add_option("--trials", opt.trials, "Number of trials")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", opt.seed, "RNG seed");
    simulate->add_option("--escape-k", opt.escape_k, "Also compute the escape curve up to this many trials");

    auto *best = app.add_subcommand("best-vector", "Best probabilistic test vector for a single gate");
    best->add_option("circuit", opt.circuit_path, "Circuit file containing one gate")->required();

    std::vector<std::string> argv_storage{"qfault"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_storage) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Rendered r;
        if (*matrix) {
            r = cmd_matrix(opt);
        } else if (*faults) {
            r = cmd_faults(opt);
        } else if (*atpg) {
            if (!(opt.confidence > 0 && opt.confidence < 1)) {
                throw UsageError("--confidence must lie strictly between 0 and 1");
            }
            r = cmd_atpg(opt);
        } else if (*simulate) {
            r = cmd_simulate(opt);
        } else {
            r = cmd_best_vector(opt);
        }
        if (opt.out_path.empty()) {
            out << r.text;
        } else {
            std::ofstream file(opt.out_path);
            if (!file) {
                throw UsageError("cannot write '" + opt.out_path + "'");
            }
            file << r.text;
        }
        return r.status;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace qfault
