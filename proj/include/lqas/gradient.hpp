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
 * @file gradient.hpp
 * Circuit-parameter gradients of losses defined on measured features.
 *
 * A loss reaches the circuit only through the 3n local Pauli expectations, so
 * every circuit gradient is a vector-Jacobian product of the upstream feature
 * gradient with d(features)/d(params). Two exact routes are provided:
 *
 *  - parameter shift: RX/RY/RZ use the two-term rule with shifts +-pi/2;
 *    CRX, whose generator |1><1| (x) X has the three eigenvalues {-1, 0, 1},
 *    uses the four-term rule with shifts +-pi/2 and +-3pi/2.
 *  - adjoint: one forward pass and one reverse sweep.
 *
 * finite_difference_grad is the independent oracle for both.
 */

#include "lqas/circuit.hpp"
#include "lqas/statevector.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lqas {

/// Scalar loss over features. When `feature_grad` is non-empty it must be
/// filled with dL/dfeature.
using FeatureObjective =
    std::function<double(std::span<const double> features, std::span<double> feature_grad)>;

enum class GradientMethod { ParameterShift, Adjoint };

/// Measured features (basis-major) of the tape applied to `input`.
[[nodiscard]] std::vector<double> circuit_features(const CircuitTape &tape,
                                                   const StateVector &input);

/// sum_f upstream[f] * d feature_f / d params via the shift rules.
[[nodiscard]] std::vector<double> parameter_shift_vjp(const CircuitTape &tape,
                                                      const StateVector &input,
                                                      std::span<const double> upstream);

/// Same contraction via a reverse sweep over the tape. `output` must be the
/// tape applied to the input.
[[nodiscard]] std::vector<double> adjoint_vjp(const CircuitTape &tape, StateVector output,
                                              std::span<const double> upstream);

[[nodiscard]] std::vector<double> parameter_shift_grad(const CircuitTape &tape,
                                                       const StateVector &input,
                                                       const FeatureObjective &loss);

[[nodiscard]] std::vector<double> adjoint_grad(const CircuitTape &tape, const StateVector &input,
                                               const FeatureObjective &loss);

/// Central differences (loss(p + h) - loss(p - h)) / 2h per parameter slot.
[[nodiscard]] std::vector<double> finite_difference_grad(const CircuitTape &tape,
                                                         const StateVector &input,
                                                         const FeatureObjective &loss,
                                                         double h);

struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::uint64_t step_count{0};
    double learning_rate{0.1};
    double beta1{0.9};
    double beta2{0.999};
    double epsilon{1e-8};

    AdamState() = default;
    AdamState(std::size_t n_params, double lr)
        : first_moment(n_params, 0.0), second_moment(n_params, 0.0), learning_rate(lr) {}

    bool operator==(const AdamState &) const = default;
};

/// Bias-corrected Adam update in place. Throws std::invalid_argument on length mismatch.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState &state);

} // namespace lqas
