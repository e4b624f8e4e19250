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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

using namespace qfault;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::string circuit(const std::string &name) {
    return std::string(QFAULT_CIRCUIT_DIR) + "/" + name;
}

std::string write_temp(const std::string &name, const std::string &text) {
    auto path = std::filesystem::temp_directory_path() / ("qfault_cli_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

nlohmann::json machine(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "machine"});
    Outcome r = run(args);
    EXPECT_TRUE(r.status == kExitOk || r.status == kExitUndetectable) << r.err;
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(cli, selectors) {
    auto all = parse_fault_selectors("smgf,mmgf:3,rgf:2-4,stuck:0,1,+,(0.6,0,0,0.8),cross");
    EXPECT_TRUE(all.include_smgf);
    EXPECT_EQ(all.mmgf_max_cardinality, 3u);
    EXPECT_EQ(all.rgf_multiplicities, (std::vector<size_t>{2, 3, 4}));
    ASSERT_EQ(all.stuck_states.size(), 4u);
    EXPECT_EQ(all.stuck_states[2], QubitState::plus());
    EXPECT_TRUE(all.include_crosspoint);

    auto defaults = parse_fault_selectors("mmgf,rgf,stuck");
    EXPECT_FALSE(defaults.include_smgf);
    EXPECT_EQ(defaults.mmgf_max_cardinality, 2u);
    EXPECT_EQ(defaults.rgf_multiplicities, (std::vector<size_t>{2, 3}));
    EXPECT_EQ(defaults.stuck_states.size(), 4u);

    EXPECT_EQ(parse_fault_selectors("rgf:5").rgf_multiplicities, std::vector<size_t>{5});

    for (std::string bad : {"bogus", "smgf:2", "mmgf:1", "rgf:1-3", "rgf:3-2", "rgf:x", "stuck:7", "0,smgf"}) {
        EXPECT_THROW(parse_fault_selectors(bad), std::invalid_argument) << bad;
    }
}

TEST(cli, matrix_text) {
    Outcome r = run({"matrix", circuit("epr.qc")});
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_EQ(r.out, "0 0 1 0\n0 0 0 1\n0 1 0 0\n1 0 0 0\n");
}

TEST(cli, matrix_machine_round_trips) {
    auto doc = machine({"matrix", circuit("hadamard.qc")});
    EXPECT_EQ(doc["tool"], "qfault");
    EXPECT_EQ(doc["command"], "matrix");
    EXPECT_EQ(doc["circuit"]["width"], 1);
    EXPECT_EQ(doc["circuit"]["gates"][0], "h 0");
    EXPECT_EQ(doc["result"]["real"][1][1].get<double>(), -1 / std::sqrt(2.0));
    EXPECT_EQ(doc["result"]["real"][0][0].get<double>(), 1 / std::sqrt(2.0));
}

TEST(cli, atpg_epr) {
    auto doc = machine({"atpg", circuit("epr.qc"), "--faults", "smgf,mmgf:2"});
    EXPECT_EQ(doc["result"]["test_set"], nlohmann::json::array({"00"}));
    EXPECT_EQ(doc["result"]["covered"].size(), 3u);
    EXPECT_TRUE(doc["result"]["undetectable"].empty());
    EXPECT_EQ(doc["result"]["profiles"][1]["fault"], "smgf:1");
    EXPECT_EQ(doc["result"]["profiles"][1]["classes"], "DDUU");

    Outcome text = run({"atpg", circuit("epr.qc"), "--faults", "smgf,mmgf:2"});
    EXPECT_EQ(text.status, kExitOk);
    EXPECT_NE(text.out.find("test set: |00>\n"), std::string::npos) << text.out;
}

TEST(cli, atpg_double_cnot) {
    auto doc = machine({"atpg", circuit("double_cnot.qc"), "--faults", "smgf,mmgf"});
    EXPECT_EQ(doc["result"]["test_set"], nlohmann::json::array({"10"}));
}

TEST(cli, atpg_hadamard_trials) {
    auto doc = machine({"atpg", circuit("hadamard.qc"), "--fault", "smgf:0"});
    ASSERT_EQ(doc["result"]["covered"].size(), 1u);
    EXPECT_EQ(doc["result"]["covered"][0]["trials_needed"], 7);
    EXPECT_EQ(doc["result"]["covered"][0]["class"], "P");
    EXPECT_EQ(doc["parameters"]["confidence"], 0.99);

    auto strict = machine({"atpg", circuit("hadamard.qc"), "--fault", "smgf:0", "--confidence", "0.999"});
    EXPECT_EQ(strict["result"]["covered"][0]["trials_needed"], 10);
}

TEST(cli, atpg_undetectable_exit_code) {
    Outcome r = run({"atpg", circuit("not.qc"), "--fault", "rgf:0x3"});
    EXPECT_EQ(r.status, kExitUndetectable);
    EXPECT_NE(r.out.find("rgf:0x3"), std::string::npos);
    EXPECT_NE(r.out.find("test set: (empty)"), std::string::npos);
}

TEST(cli, atpg_partition) {
    std::string path = write_temp("partition.qc", "qubits 2\nx 0\ncx 0 1\ncx 0 1\ncx 1 0\n");
    auto doc = machine({"atpg", path, "--faults", "smgf", "--partition", "2"});
    auto parts = doc["result"]["partitions"];
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0]["first_gate"], 0);
    EXPECT_EQ(parts[1]["first_gate"], 2);
    EXPECT_EQ(parts[1]["gate_count"], 2);

    Outcome clash = run({"atpg", path, "--fault", "smgf:0", "--partition", "2"});
    EXPECT_EQ(clash.status, kExitUsage);
    Outcome bad = run({"atpg", path, "--partition", "9"});
    EXPECT_EQ(bad.status, kExitUsage);
    EXPECT_NE(bad.err.find("error:"), std::string::npos);
}

TEST(cli, faults_listing) {
    Outcome r = run({"faults", circuit("epr.qc"), "--faults", "smgf,mmgf"});
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_EQ(r.out, "smgf:0\nsmgf:1\nmmgf:0,1\n");

    Outcome d = run({"faults", circuit("not.qc")});
    EXPECT_EQ(d.out, "smgf:0\nrgf:0x2\nrgf:0x3\nstuck:0=0\nstuck:0=1\nstuck:0=+\nstuck:0=-\n");

    Outcome extra = run({"faults", circuit("epr.qc"), "--faults", "smgf", "--fault", "smgf:1", "--fault", "stuck:1=+"});
    EXPECT_EQ(extra.out, "smgf:0\nsmgf:1\nstuck:1=+\n");
}

TEST(cli, simulate_hadamard) {
    auto doc = machine({"simulate", circuit("hadamard.qc"), "--fault", "smgf:0", "--input", "0", "--trials", "100000",
                        "--escape-k", "3"});
    EXPECT_NEAR(doc["result"]["p_hat"].get<double>(), 0.5, 0.01);
    EXPECT_NEAR(doc["result"]["analytic_p"].get<double>(), 0.5, 1e-12);
    EXPECT_EQ(doc["rng"]["algorithm"], "splitmix64");
    EXPECT_EQ(doc["rng"]["seed"], 42);
    ASSERT_EQ(doc["result"]["escape_curve"].size(), 3u);
    EXPECT_NEAR(doc["result"]["escape_curve"][2]["rate"].get<double>(), 0.875, 0.02);
    EXPECT_NEAR(doc["result"]["escape_curve"][2]["analytic"].get<double>(), 0.875, 1e-12);
}

TEST(cli, simulate_stuck_matching_input) {
    auto doc = machine({"simulate", circuit("hadamard.qc"), "--fault", "stuck:0=0", "--input", "0"});
    EXPECT_EQ(doc["result"]["p_hat"], 0.0);
    EXPECT_EQ(doc["result"]["trials"], 10000);
}

TEST(cli, simulate_errors) {
    EXPECT_EQ(run({"simulate", circuit("epr.qc"), "--fault", "smgf:0", "--input", "0"}).status, kExitUsage);
    EXPECT_EQ(run({"simulate", circuit("epr.qc"), "--fault", "smgf:7", "--input", "00"}).status, kExitUsage);
    EXPECT_EQ(run({"simulate", circuit("epr.qc"), "--input", "00"}).status, kExitUsage);
    EXPECT_EQ(run({"simulate", circuit("epr.qc"), "--fault", "smgf:0", "--input", "00", "--trials", "0"}).status,
              kExitUsage);
}

TEST(cli, best_vector) {
    std::string path = write_temp("cu.qc", "qubits 2\nu1 1 0.9486832980505138 0 -0.31622776601683794 0 "
                                           "0.31622776601683794 0 0.9486832980505138 0 @ 0\n");
    auto doc = machine({"best-vector", path});
    EXPECT_EQ(doc["result"]["inputs"], nlohmann::json::array({"10", "11"}));
    EXPECT_NEAR(doc["result"]["per_trial_p"].get<double>(), 0.1, 1e-12);

    Outcome h = run({"best-vector", circuit("hadamard.qc")});
    EXPECT_EQ(h.status, kExitOk);
    EXPECT_NE(h.out.find("|0> |1>"), std::string::npos) << h.out;

    EXPECT_EQ(run({"best-vector", circuit("epr.qc")}).status, kExitUsage);
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run({}).status, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).status, kExitUsage);
    EXPECT_EQ(run({"matrix"}).status, kExitUsage);
    EXPECT_EQ(run({"matrix", "/nonexistent/file.qc"}).status, kExitUsage);
    EXPECT_EQ(run({"--format", "xml", "matrix", circuit("epr.qc")}).status, kExitUsage);
    EXPECT_EQ(run({"atpg", circuit("epr.qc"), "--faults", "bogus"}).status, kExitUsage);
    EXPECT_EQ(run({"atpg", circuit("epr.qc"), "--confidence", "1"}).status, kExitUsage);
    EXPECT_EQ(run({"--help"}).status, kExitOk);
}

TEST(cli, parse_error_reports_line) {
    std::string path = write_temp("bad.qc", "qubits 2\nx 0\ncx 0 2\n");
    Outcome r = run({"matrix", path});
    EXPECT_EQ(r.status, kExitUsage);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(cli, machine_output_is_byte_identical_across_runs) {
    std::vector<std::string> atpg{"--format", "machine", "atpg", circuit("toffoli.qc"), "--faults",
                                  "smgf,rgf,stuck,cross"};
    EXPECT_EQ(run(atpg).out, run(atpg).out);
    std::vector<std::string> sim{"--format", "machine", "simulate", circuit("hadamard.qc"), "--fault", "smgf:0",
                                 "--input", "1", "--seed", "9", "--escape-k", "4"};
    EXPECT_EQ(run(sim).out, run(sim).out);
}

TEST(cli, machine_json_round_trips_losslessly) {
    Outcome r = run({"--format", "machine", "atpg", circuit("toffoli.qc"), "--faults", "stuck"});
    auto doc = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(doc.dump(2) + "\n", r.out);
}

TEST(cli, out_flag_writes_file) {
    auto path = (std::filesystem::temp_directory_path() / "qfault_cli_test_out.json").string();
    std::filesystem::remove(path);
    Outcome r = run({"--format", "machine", "--out", path, "matrix", circuit("epr.qc")});
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    auto doc = nlohmann::json::parse(in);
    EXPECT_EQ(doc["result"]["dim"], 4);
}
