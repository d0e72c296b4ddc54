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
#pragma once

/**
 * @file circuit.hpp
 * Gate tapes with a flat parameter vector, layer templates and pruning.
 *
 * Layer templates (n qubits, k = n / 3 qubits per coordinate register,
 * register r holds qubits [r*k, (r+1)*k)):
 *
 *   0  RX on every qubit                                   n params
 *   1  RY on every qubit                                   n params
 *   2  RZ on every qubit                                   n params
 *   3  CNOT ring over the registers, per bit position i:
 *      reg0[i] -> reg1[i], reg1[i] -> reg2[i], reg2[i] -> reg0[i]   0 params
 *   4  CRX onto every qubit q >= 1 from each predecessor p < q      n(n-1)/2
 *   5  CRX chain, q-1 controls q                                    n-1
 *   6  CRX ring, q controls (q+1) mod n                             n
 *   7  reverse CRX chain, q+1 controls q                            n-1
 *   8  all-predecessor CRX inside each register                     3 k(k-1)/2
 *   9  cross-register CRX chain, reg0[i] -> reg1[i] -> reg2[i]      2k
 *
 * Templates 3, 8 and 9 need n divisible by 3.
 */

#include "lqas/statevector.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace lqas {

struct GateOp {
    GateKind kind{GateKind::Identity};
    std::size_t target{0};
    std::optional<std::size_t> control;
    std::optional<std::size_t> param_slot;

    bool operator==(const GateOp &) const = default;
};

inline constexpr int kNumTemplates = 10;
/// Template id recorded in layer boundaries for pruning actions.
inline constexpr int kPruneTemplate = -1;

enum class LayerType { SingleQubit, Entangling, Prune };

[[nodiscard]] LayerType layer_type_of(int template_id);
[[nodiscard]] std::size_t template_param_count(int template_id, std::size_t n_qubits);

struct LayerBoundary {
    std::size_t start_op{0};
    int template_id{0};

    bool operator==(const LayerBoundary &) const = default;
};

/// Value type; every mutating search operation returns a new tape.
class CircuitTape {
  public:
    explicit CircuitTape(std::size_t n_qubits = 0) : n_qubits_(n_qubits) {}

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<GateOp> &ops() const noexcept { return ops_; }
    [[nodiscard]] const std::vector<double> &params() const noexcept { return params_; }
    [[nodiscard]] std::span<double> mutable_params() noexcept { return params_; }
    [[nodiscard]] const std::vector<LayerBoundary> &layer_boundaries() const noexcept {
        return boundaries_;
    }

    [[nodiscard]] std::size_t num_params() const noexcept { return params_.size(); }
    [[nodiscard]] std::size_t num_parameterized_ops() const noexcept;

    /// Appends a parameter and returns its slot.
    std::size_t add_param(double value);
    /// Validates wires and slot against the current tape before appending.
    void add_op(const GateOp &op);
    void mark_layer(int template_id);

    void set_params(std::vector<double> params);

    /// Checks every structural invariant; throws std::invalid_argument.
    void validate() const;

    bool operator==(const CircuitTape &) const = default;

  private:
    friend CircuitTape rebuild_tape(std::size_t, std::vector<GateOp>, std::vector<double>,
                                    std::vector<LayerBoundary>);

    std::size_t n_qubits_;
    std::vector<GateOp> ops_;
    std::vector<double> params_;
    std::vector<LayerBoundary> boundaries_;
};

/// Assembles a tape from raw parts and validates it.
[[nodiscard]] CircuitTape rebuild_tape(std::size_t n_qubits, std::vector<GateOp> ops,
                                       std::vector<double> params,
                                       std::vector<LayerBoundary> boundaries);

/// Gates of one layer. Parameter slots are numbered 0..n_new_params-1.
struct LayerGates {
    std::vector<GateOp> ops;
    std::size_t n_new_params{0};
};

[[nodiscard]] LayerGates instantiate_layer(int template_id, std::size_t n_qubits);

/// Old ops followed by the template's gates; new parameters start at zero.
[[nodiscard]] CircuitTape append_layer(const CircuitTape &tape, int template_id);

struct PruneResult {
    CircuitTape tape;
    /// Indices into the input tape's op list, ascending.
    std::vector<std::size_t> removed_ops;
};

/// Removes ceil(proportion * eligible) randomly chosen parameterized gates
/// among those with |angle| < threshold, then compacts the parameter vector.
[[nodiscard]] PruneResult prune_tape(const CircuitTape &tape, double threshold,
                                     double proportion, std::uint64_t seed);

/// Runs the tape on `state` in place using `params` in place of tape.params().
void run_tape(const CircuitTape &tape, std::span<const double> params, StateVector &state);

/// Runs the tape with one op's angle offset by `shift` (for shift rules).
void run_tape_shifted(const CircuitTape &tape, std::size_t op_index, double shift,
                      StateVector &state);

[[nodiscard]] StateVector evaluate_tape(const CircuitTape &tape, StateVector input);

inline constexpr int kCircuitDocumentVersion = 1;

[[nodiscard]] nlohmann::json tape_to_json(const CircuitTape &tape);
/// Throws ParseError (with op index where applicable) on malformed input.
[[nodiscard]] CircuitTape tape_from_json(const nlohmann::json &doc);

[[nodiscard]] std::string serialize(const CircuitTape &tape);
[[nodiscard]] CircuitTape deserialize(std::string_view document);

/// Shortest decimal text that parses back to the identical double.
[[nodiscard]] std::string format_exact(double value);
[[nodiscard]] double parse_exact(std::string_view text);

} // namespace lqas
