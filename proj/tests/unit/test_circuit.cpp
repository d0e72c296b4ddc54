// Copyright 2026 The LQAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "lqas/circuit.hpp"
#include "lqas/errors.hpp"
#include "lqas/gradient.hpp"

#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <bit>
#include <numbers>

using namespace lqas;

namespace {

constexpr double kPi = std::numbers::pi;

CircuitTape rotations(std::size_t n_qubits, const std::vector<double> &angles) {
    CircuitTape tape(n_qubits);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        tape.add_op({GateKind::RY, i % n_qubits, std::nullopt, tape.add_param(angles[i])});
    }
    return tape;
}

} // namespace

TEST_CASE("template gate and parameter counts", "[circuit]") {
    const LayerGates rx = instantiate_layer(0, 9);
    CHECK(rx.ops.size() == 9);
    CHECK(rx.n_new_params == 9);
    for (std::size_t q = 0; q < 9; ++q) {
        CHECK(rx.ops[q] == GateOp{GateKind::RX, q, std::nullopt, q});
    }

    const LayerGates cnots = instantiate_layer(3, 9);
    CHECK(cnots.n_new_params == 0);
    REQUIRE(cnots.ops.size() == 9);
    for (const GateOp &op : cnots.ops) {
        CHECK(op.kind == GateKind::CNOT);
        CHECK((op.target + 9 - *op.control) % 9 == 3);  // next register, same position
    }

    CHECK(instantiate_layer(4, 9).ops.size() == 36);
    CHECK(instantiate_layer(4, 9).n_new_params == 36);
    CHECK(instantiate_layer(5, 9).n_new_params == 8);
    CHECK(instantiate_layer(6, 9).n_new_params == 9);
    CHECK(instantiate_layer(7, 9).n_new_params == 8);
    CHECK(instantiate_layer(8, 9).n_new_params == 9);
    CHECK(instantiate_layer(9, 9).n_new_params == 6);
    for (int t = 0; t < kNumTemplates; ++t) {
        CHECK(instantiate_layer(t, 6).n_new_params == template_param_count(t, 6));
        CHECK((layer_type_of(t) == LayerType::SingleQubit) == (t <= 2));
    }
    CHECK(layer_type_of(kPruneTemplate) == LayerType::Prune);

    const LayerGates all_pred = instantiate_layer(4, 4);
    for (const GateOp &op : all_pred.ops) {
        CHECK(*op.control < op.target);
    }
    for (const GateOp &op : instantiate_layer(5, 5).ops) {
        CHECK(*op.control + 1 == op.target);
    }
}

TEST_CASE("template errors", "[circuit]") {
    CHECK_THROWS_AS(instantiate_layer(10, 9), std::invalid_argument);
    CHECK_THROWS_AS(instantiate_layer(-2, 9), std::invalid_argument);
    CHECK_THROWS_AS(instantiate_layer(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(instantiate_layer(8, 4), std::invalid_argument);
}

TEST_CASE("append_layer keeps old parameters and zero-initialises new ones", "[circuit]") {
    CircuitTape tape = append_layer(CircuitTape(9), 0);
    CHECK(tape.ops().size() == 9);
    tape.set_params(std::vector<double>(9, 0.7));
    const CircuitTape grown = append_layer(tape, 4);
    CHECK(grown.num_params() == 9 + 36);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(grown.params()[i] == 0.7);
    }
    for (std::size_t i = 9; i < grown.num_params(); ++i) {
        CHECK(grown.params()[i] == 0.0);
    }
    REQUIRE(grown.layer_boundaries().size() == 2);
    CHECK(grown.layer_boundaries()[1] == LayerBoundary{9, 4});
}

TEST_CASE("zero-initialised layers leave features unchanged", "[circuit]") {
    Rng rng(41);
    CircuitTape base = append_layer(append_layer(CircuitTape(6), 1), 5);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (double &p : base.mutable_params()) {
        p = angle(rng);
    }
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector input = testing::random_real_state(6, rng);
        const std::vector<double> before = circuit_features(base, input);
        for (int t = 0; t < kNumTemplates; ++t) {
            const std::vector<double> after = circuit_features(append_layer(base, t), input);
            double diff = 0.0;
            for (std::size_t i = 0; i < before.size(); ++i) {
                diff = std::max(diff, std::abs(after[i] - before[i]));
            }
            if (t == 3) {
                CHECK(diff > 1e-6);
            } else {
                CHECK(diff < 1e-12);
            }
        }
    }
}

TEST_CASE("pruning removes only small-angle gates", "[circuit]") {
    const CircuitTape big = rotations(3, {kPi, kPi, -kPi});
    const PruneResult none = prune_tape(big, kPi / 10, 0.5, 1);
    CHECK(none.removed_ops.empty());
    CHECK(none.tape.ops() == big.ops());

    const CircuitTape mixed = rotations(3, {0.01, 0.02, 2.0});
    const PruneResult all = prune_tape(mixed, kPi / 10, 1.0, 9);
    CHECK(all.removed_ops == std::vector<std::size_t>{0, 1});
    REQUIRE(all.tape.num_params() == 1);
    CHECK(all.tape.params()[0] == 2.0);
    CHECK(all.tape.ops().size() == 1);
    CHECK(all.tape.layer_boundaries().back().template_id == kPruneTemplate);

    CHECK_THROWS_AS(prune_tape(mixed, 0.0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(prune_tape(mixed, 0.1, 0.0, 1), std::invalid_argument);
}

TEST_CASE("seeded pruning removes ceil(proportion * eligible)", "[circuit]") {
    std::vector<double> angles;
    for (int i = 0; i < 10; ++i) {
        angles.push_back(0.01 * (i + 1));
    }
    for (int i = 0; i < 5; ++i) {
        angles.push_back(1.0 + i);
    }
    CircuitTape tape = rotations(5, angles);
    tape.add_op({GateKind::CNOT, 1, 0, std::nullopt});
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PruneResult r = prune_tape(tape, kPi / 10, 0.5, seed);
        CHECK(r.removed_ops.size() == 5);
        for (const std::size_t i : r.removed_ops) {
            CHECK(tape.ops()[i].kind != GateKind::CNOT);
            CHECK(std::abs(tape.params()[*tape.ops()[i].param_slot]) < kPi / 10);
        }
        CHECK(r.tape.num_params() == tape.num_params() - 5);
        CHECK(r.tape.ops().back().kind == GateKind::CNOT);
        // Survivors keep their values exactly, in order.
        std::vector<double> expected;
        for (std::size_t i = 0; i < tape.ops().size(); ++i) {
            if (tape.ops()[i].param_slot &&
                !std::binary_search(r.removed_ops.begin(), r.removed_ops.end(), i)) {
                expected.push_back(tape.params()[*tape.ops()[i].param_slot]);
            }
        }
        CHECK(r.tape.params() == expected);
        r.tape.validate();
    }
    CHECK(prune_tape(tape, kPi / 10, 0.5, 4).removed_ops ==
          prune_tape(tape, kPi / 10, 0.5, 4).removed_ops);
}

TEST_CASE("evaluate_tape basics", "[circuit]") {
    Rng rng(2);
    const StateVector input = testing::random_state(3, rng);
    const StateVector same = evaluate_tape(CircuitTape(3), input);
    for (std::size_t i = 0; i < input.size(); ++i) {
        CHECK(same[i] == input[i]);
    }
    const StateVector flipped = evaluate_tape(rotations(1, {}), StateVector(1));
    CHECK(flipped[0] == Complex(1.0, 0.0));
    CircuitTape rx(1);
    rx.add_op({GateKind::RX, 0, std::nullopt, rx.add_param(kPi)});
    const StateVector out = evaluate_tape(rx, StateVector(1));
    CHECK(std::abs(out[1] - Complex(0.0, -1.0)) < 1e-15);
    CHECK_THROWS_AS(evaluate_tape(rx, StateVector(2)), std::invalid_argument);

    for (int trial = 0; trial < 10; ++trial) {
        const CircuitTape tape = testing::random_tape(9, 60, rng);
        const StateVector s = evaluate_tape(tape, testing::random_state(9, rng));
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-9);
    }
}

TEST_CASE("tape construction validates ops", "[circuit]") {
    CircuitTape tape(3);
    CHECK_THROWS(tape.add_op({GateKind::RX, 0, std::nullopt, std::nullopt}));
    CHECK_THROWS(tape.add_op({GateKind::RX, 0, std::nullopt, 0}));
    CHECK_THROWS(tape.add_op({GateKind::RX, 3, std::nullopt, tape.add_param(0.0)}));
    CHECK_THROWS(tape.add_op({GateKind::CNOT, 1, std::nullopt, std::nullopt}));
    CHECK_THROWS(tape.add_op({GateKind::CRX, 1, 1, 0}));
    CHECK_THROWS(tape.add_op({GateKind::CNOT, 1, 0, 0}));
    tape.add_op({GateKind::CRX, 1, 2, 0});
    CHECK(tape.num_parameterized_ops() == 1);
    CHECK_THROWS_AS(tape.set_params({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("circuit documents round-trip exactly", "[circuit]") {
    const CircuitTape empty(4);
    CHECK(deserialize(serialize(empty)) == empty);

    Rng rng(8);
    CircuitTape tape(6);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int g = 0; g < 20; ++g) {
        tape = append_layer(tape, static_cast<int>(rng() % kNumTemplates));
        for (double &p : tape.mutable_params()) {
            if (p == 0.0) {
                p = angle(rng) * 1e-3 + std::ldexp(1.0, -40);
            }
        }
        if (g % 3 == 2) {
            tape = prune_tape(tape, 1e-3, 0.5, g).tape;
        }
    }
    const CircuitTape back = deserialize(serialize(tape));
    CHECK(back == tape);
    for (std::size_t i = 0; i < tape.num_params(); ++i) {
        CHECK(std::bit_cast<std::uint64_t>(back.params()[i]) ==
              std::bit_cast<std::uint64_t>(tape.params()[i]));
    }
    const StateVector input = testing::random_real_state(6, rng);
    CHECK(circuit_features(back, input) == circuit_features(tape, input));
}

TEST_CASE("malformed circuit documents raise parse errors", "[circuit]") {
    CHECK_THROWS_AS(deserialize("not json"), ParseError);
    CHECK_THROWS_AS(deserialize(R"({"version": 1})"), ParseError);
    const std::string unknown_kind = R"({"version": 1, "n_qubits": 2, "params": ["0.5"],
        "ops": [{"kind": "RX", "target": 0, "param_slot": 0},
                {"kind": "SWAP", "target": 1}],
        "layer_boundaries": []})";
    try {
        (void)deserialize(unknown_kind);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.op_index() == 1);
        CHECK(std::string(e.what()).find("op 1") != std::string::npos);
    }
    const std::string bad_wire = R"({"version": 1, "n_qubits": 2, "params": [],
        "ops": [{"kind": "CNOT", "target": 1, "control": 4}], "layer_boundaries": []})";
    CHECK_THROWS_AS(deserialize(bad_wire), ParseError);
    const std::string bad_number = R"({"version": 1, "n_qubits": 1, "params": ["0.5x"],
        "ops": [], "layer_boundaries": []})";
    CHECK_THROWS_AS(deserialize(bad_number), ParseError);
}

TEST_CASE("exact number text", "[circuit]") {
    for (const double v : {0.1, -2.5e-300, kPi / 10, 1.0 / 3.0}) {
        CHECK(parse_exact(format_exact(v)) == v);
    }
}
