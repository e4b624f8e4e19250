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

#include "qfault/circuit.h"

#include <random>

#include "gtest/gtest.h"
#include "statevector_oracle.h"

using namespace qfault;

namespace {

const ComplexMatrix kReferenceB1{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
const ComplexMatrix kReferenceB2{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};

Gate cx(size_t c, size_t t) {
    return Gate(GateKind::CX, {c}, {t});
}
Gate x(size_t t) {
    return Gate(GateKind::X, {}, {t});
}

bool is_permutation(const ComplexMatrix &m) {
    for (size_t c = 0; c < m.dim(); c++) {
        size_t ones = 0;
        for (size_t r = 0; r < m.dim(); r++) {
            Complex v = m(r, c);
            if (v == Complex(1)) {
                ones++;
            } else if (v != Complex(0)) {
                return false;
            }
        }
        if (ones != 1) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(circuit, embed_x_on_low_line) {
    // Brute force from the basis-state rule: flip bit of line 1 (the LSB).
    ComplexMatrix expected(4);
    for (size_t col = 0; col < 4; col++) {
        expected(col ^ 1, col) = 1.0;
    }
    EXPECT_EQ(embed_gate(x(1), 2), expected);
    EXPECT_EQ(embed_gate(x(1), 2), tensor(ComplexMatrix::identity(2), ComplexMatrix{{0, 1}, {1, 0}}));
}

TEST(circuit, embed_matches_reference_matrices) {
    EXPECT_EQ(embed_gate(x(0), 2), kReferenceB1);
    EXPECT_EQ(embed_gate(cx(0, 1), 2), kReferenceB2);
}

TEST(circuit, embed_middle_line_is_sandwiched_tensor) {
    ComplexMatrix i2 = ComplexMatrix::identity(2);
    ComplexMatrix expected = tensor(tensor(i2, ComplexMatrix{{0, 1}, {1, 0}}), i2);
    EXPECT_EQ(embed_gate(x(1), 3), expected);
}

TEST(circuit, total_matrix_golden_cases) {
    EXPECT_EQ(total_matrix(Circuit(2)), ComplexMatrix::identity(4));

    ComplexMatrix reference_epr{{0, 0, 0, 1}, {0, 0, 1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}};
    Circuit epr(2, {x(0), cx(0, 1)});
    EXPECT_EQ(total_matrix(epr).transpose(), reference_epr);
    // Column 0 is the output for |00>; it equals reference row 0, i.e. |11>.
    auto out0 = column(total_matrix(epr), 0);
    EXPECT_EQ(out0[3], Complex(1));

    ComplexMatrix reference_double{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    Circuit dbl(2, {cx(0, 1), cx(1, 0)});
    EXPECT_EQ(total_matrix(dbl).transpose(), reference_double);
}

TEST(circuit, toffoli_swaps_last_two_rows) {
    ComplexMatrix expected = ComplexMatrix::identity(8);
    expected(6, 6) = 0;
    expected(7, 7) = 0;
    expected(6, 7) = 1;
    expected(7, 6) = 1;
    EXPECT_EQ(total_matrix(parse_circuit("qubits 3\nccx 0 1 2\n")), expected);
}

TEST(circuit, cx_flips_target_iff_control_set) {
    const size_t n = 3;
    for (size_t c = 0; c < n; c++) {
        for (size_t t = 0; t < n; t++) {
            if (c == t) {
                continue;
            }
            ComplexMatrix u = embed_gate(cx(c, t), n);
            for (size_t b = 0; b < 8; b++) {
                size_t expected = line_bit(b, c, n) ? b ^ (size_t{1} << (n - 1 - t)) : b;
                auto out = column(u, b);
                EXPECT_EQ(out[expected], Complex(1)) << "c=" << c << " t=" << t << " b=" << b;
            }
        }
    }
}

TEST(circuit, nct_gates_embed_as_permutations) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 3 + rng() % 2;
        auto c = oracle::random_circuit(rng, n, 1, {GateKind::X, GateKind::CX, GateKind::CCX});
        Gate g = c.gates()[0];
        if (rng() % 2 && !g.touches(0)) {
            g = g.with_control_added(0);
        }
        EXPECT_TRUE(is_permutation(embed_gate(g, n))) << g.to_string();
    }
}

TEST(circuit, circuit_then_reverse_is_identity) {
    std::mt19937_64 rng(23);
    std::vector<GateKind> kinds{GateKind::X, GateKind::CX, GateKind::CCX, GateKind::H};
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + rng() % 4;
        size_t m = rng() % 9;
        auto c = oracle::random_circuit(rng, n, m, kinds);
        std::vector<Gate> gates = c.gates();
        gates.insert(gates.end(), c.gates().rbegin(), c.gates().rend());
        EXPECT_LE(max_abs_diff(total_matrix(Circuit(n, gates)), ComplexMatrix::identity(c.dim())), 1e-8);
    }
}

TEST(circuit, identity_insertion_is_invisible) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 1 + rng() % 3;
        auto c = oracle::random_circuit(rng, n, rng() % 6, {GateKind::X, GateKind::CX, GateKind::H, GateKind::T});
        std::vector<Gate> gates = c.gates();
        size_t pos = gates.empty() ? 0 : rng() % (gates.size() + 1);
        gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(pos), Gate(GateKind::I, {}, {rng() % n}));
        EXPECT_LE(max_abs_diff(total_matrix(Circuit(n, gates)), total_matrix(c)), 1e-12);
    }
}

TEST(circuit, total_matrix_is_unitary_for_every_kind) {
    auto c = parse_circuit(
        "qubits 3\n"
        "i 0\nx 0\ny 1\nz 2\nh 0\ns 1\nt 2\n"
        "cx 0 1\ncz 1 2\nswap 0 2\nccx 0 1 2\ncswap 2 0 1\n"
        "u1 1 0 0.6 0.8 0 -0.8 0 0 -0.6 @ 0\n");
    EXPECT_EQ(c.size(), 13u);
    EXPECT_TRUE(is_unitary(total_matrix(c), 1e-8));
}

TEST(circuit, matrices_agree_with_direct_simulation) {
    std::mt19937_64 rng(31);
    std::vector<GateKind> kinds{GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::S, GateKind::T,
                                GateKind::CX, GateKind::CZ, GateKind::SWAP, GateKind::CCX, GateKind::CSWAP};
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 1 + rng() % 4;
        auto c = oracle::random_circuit(rng, n, rng() % 7, kinds);
        ComplexMatrix u = total_matrix(c);
        for (size_t i = 0; i < c.dim(); i++) {
            auto direct = oracle::run(c.gates(), n, oracle::basis(n, i));
            for (size_t r = 0; r < c.dim(); r++) {
                EXPECT_NEAR(std::abs(u(r, i) - direct[r]), 0.0, 1e-12);
            }
        }
    }
}

TEST(circuit_parser, epr_file) {
    auto c = parse_circuit("qubits 2 \n x 0 \n cx 0 1");
    ASSERT_EQ(c.width(), 2u);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.gates()[0], x(0));
    EXPECT_EQ(c.gates()[1], cx(0, 1));
}

TEST(circuit_parser, single_hadamard) {
    auto c = parse_circuit("qubits 1\nh 0\n");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.gates()[0].kind(), GateKind::H);
}

TEST(circuit_parser, comments_blank_lines_and_extra_controls) {
    auto c = parse_circuit("# header\n\nqubits 4   # four lines\n\nx 3 @ 0,1\nswap 1 2 @ 0\ncx 0 1 @ 2, 3\n");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.gates()[0].controls(), (std::vector<size_t>{0, 1}));
    EXPECT_EQ(c.gates()[0].to_string(), "x 3 @ 0,1");
    EXPECT_EQ(c.gates()[2].controls(), (std::vector<size_t>{0, 2, 3}));
    EXPECT_EQ(c.gates()[2].to_string(), "cx 0 1 @ 2,3");
}

TEST(circuit_parser, echo_round_trips) {
    std::string text =
        "qubits 3\nh 0\ncx 0 1\nccx 2 0 1\ncswap 0 1 2\nu1 2 0.6 0 0 0.8 0 0.8 0.6 0\nz 1 @ 0,2\n";
    auto c = parse_circuit(text);
    EXPECT_EQ(parse_circuit(c.to_string()), c);
}

TEST(circuit_parser, errors_carry_line_numbers) {
    auto expect_error = [](std::string_view text, size_t line, std::string_view fragment) {
        try {
            parse_circuit(text);
            ADD_FAILURE() << "no error for: " << text;
        } catch (const CircuitParseError &ex) {
            EXPECT_EQ(ex.line(), line) << ex.what();
            EXPECT_NE(std::string(ex.what()).find(fragment), std::string::npos) << ex.what();
        }
    };
    expect_error("qubits 2 \n cx 0 2", 2, "out of range");
    expect_error("qubits 2\nfoo 1\n", 2, "unknown gate");
    expect_error("qubits 3\n\nccx 0 0 1\n", 3, "used twice");
    expect_error("qubits 2\nx 1 @ 1\n", 2, "used twice");
    expect_error("qubits 1\nu1 0 1 0 0 0 0 0\n", 2, "malformed u1");
    expect_error("qubits 1\nu1 0 1 0 0 0 0 0 1 zz\n", 2, "malformed matrix entry");
    expect_error("qubits 1\nu1 0 1 0 1 0 1 0 1 0\n", 2, "not unitary");
    expect_error("x 0\n", 1, "first statement");
    expect_error("qubits 13\n", 1, "qubit count");
    expect_error("qubits 0\n", 1, "qubit count");
    expect_error("qubits 2\nqubits 2\n", 2, "duplicate");
    expect_error("", 0, "missing");
    expect_error("qubits 2\ncx 0\n", 2, "expects 2");
    expect_error("qubits 2\nx 0 @\n", 2, "followed by control");
}

TEST(circuit_model, gate_validation) {
    EXPECT_THROW(Gate(GateKind::CX, {1}, {1}), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::SWAP, {}, {0}), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::U1, {}, {0}), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::U1, {}, {0}, ComplexMatrix{{1, 1}, {1, 1}}), std::invalid_argument);
    EXPECT_THROW(Circuit(2, {x(2)}), std::invalid_argument);
    EXPECT_THROW(Circuit(0), std::invalid_argument);
    EXPECT_NO_THROW(Circuit(1));
}

TEST(circuit_model, removing_native_control_reduces_kind_in_echo) {
    Gate toffoli(GateKind::CCX, {0, 1}, {2});
    EXPECT_EQ(toffoli.with_control_removed(0).to_string(), "cx 1 2");
    EXPECT_EQ(cx(0, 1).with_control_removed(0).to_string(), "x 1");
    EXPECT_EQ(cx(0, 1).with_control_added(2).to_string(), "cx 0 1 @ 2");
}
