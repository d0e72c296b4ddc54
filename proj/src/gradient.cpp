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
#include "lqas/gradient.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lqas {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Four-term shift coefficients for generators with spectrum {-1, 0, 1}.
const double kFourTermNear = (std::numbers::sqrt2 + 1.0) / (4.0 * std::numbers::sqrt2);
const double kFourTermFar = (std::numbers::sqrt2 - 1.0) / (4.0 * std::numbers::sqrt2);

double shifted_projection(const CircuitTape &tape, const StateVector &input, std::size_t op,
                          double shift, std::span<const double> upstream) {
    StateVector state = input;
    run_tape_shifted(tape, op, shift, state);
    const std::vector<double> features = local_pauli_expectations(state);
    double total = 0.0;
    for (std::size_t f = 0; f < features.size(); ++f) {
        total += upstream[f] * features[f];
    }
    return total;
}

void check_upstream(const CircuitTape &tape, std::span<const double> upstream) {
    if (upstream.size() != 3 * tape.n_qubits()) {
        throw std::invalid_argument("upstream gradient must have " +
                                    std::to_string(3 * tape.n_qubits()) + " entries");
    }
}

} // namespace

std::vector<double> circuit_features(const CircuitTape &tape, const StateVector &input) {
    return local_pauli_expectations(evaluate_tape(tape, input));
}

std::vector<double> parameter_shift_vjp(const CircuitTape &tape, const StateVector &input,
                                        std::span<const double> upstream) {
    check_upstream(tape, upstream);
    std::vector<double> grads(tape.num_params(), 0.0);
    const auto &ops = tape.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (!ops[i].param_slot) {
            continue;
        }
        auto at = [&](double shift) { return shifted_projection(tape, input, i, shift, upstream); };
        double g = 0.0;
        if (ops[i].kind == GateKind::CRX) {
            g = kFourTermNear * (at(kHalfPi) - at(-kHalfPi)) -
                kFourTermFar * (at(3.0 * kHalfPi) - at(-3.0 * kHalfPi));
        } else {
            g = 0.5 * (at(kHalfPi) - at(-kHalfPi));
        }
        grads[*ops[i].param_slot] += g;
    }
    return grads;
}

std::vector<double> adjoint_vjp(const CircuitTape &tape, StateVector output,
                                 std::span<const double> upstream) {
    check_upstream(tape, upstream);
    const std::size_t n = tape.n_qubits();
    // lambda = H |psi>, H = sum_f upstream_f M_f.
    StateVector lambda(n, std::vector<Complex>(output.size()));
    for (std::size_t b = 0; b < 3; ++b) {
        for (std::size_t q = 0; q < n; ++q) {
            const double w = upstream[b * n + q];
            if (w == 0.0) {
                continue;
            }
            StateVector term = output;
            apply_pauli(term, kAllBases[b], q);
            auto dst = lambda.amplitudes();
            const auto src = term.amplitudes();
            for (std::size_t i = 0; i < dst.size(); ++i) {
                dst[i] += w * src[i];
            }
        }
    }
    std::vector<double> grads(tape.num_params(), 0.0);
    const auto &ops = tape.ops();
    const auto &params = tape.params();
    for (std::size_t i = ops.size(); i-- > 0;) {
        const GateOp &op = ops[i];
        const double angle = op.param_slot ? params[*op.param_slot] : 0.0;
        if (op.param_slot) {
            // d<H>/dangle = Im <lambda| G |psi> with psi the state after this op.
            StateVector mu = output;
            apply_generator(mu, op.kind, op.target, op.control);
            grads[*op.param_slot] += inner_product(lambda, mu).imag();
        }
        // Undo the op on both sweeps: rotations invert by negating the angle,
        // CNOT is self-inverse.
        apply_gate(output, op.kind, -angle, op.target, op.control);
        apply_gate(lambda, op.kind, -angle, op.target, op.control);
    }
    return grads;
}

std::vector<double> parameter_shift_grad(const CircuitTape &tape, const StateVector &input,
                                         const FeatureObjective &loss) {
    const std::vector<double> features = circuit_features(tape, input);
    std::vector<double> upstream(features.size(), 0.0);
    (void)loss(features, upstream);
    return parameter_shift_vjp(tape, input, upstream);
}

std::vector<double> adjoint_grad(const CircuitTape &tape, const StateVector &input,
                                 const FeatureObjective &loss) {
    StateVector output = evaluate_tape(tape, input);
    const std::vector<double> features = local_pauli_expectations(output);
    std::vector<double> upstream(features.size(), 0.0);
    (void)loss(features, upstream);
    return adjoint_vjp(tape, std::move(output), upstream);
}

std::vector<double> finite_difference_grad(const CircuitTape &tape, const StateVector &input,
                                           const FeatureObjective &loss, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite difference step must be positive");
    }
    std::vector<double> params = tape.params();
    std::vector<double> grads(params.size(), 0.0);
    auto evaluate = [&](std::span<const double> p) {
        StateVector state = input;
        run_tape(tape, p, state);
        const std::vector<double> features = local_pauli_expectations(state);
        return loss(features, {});
    };
    for (std::size_t j = 0; j < params.size(); ++j) {
        const double saved = params[j];
        params[j] = saved + h;
        const double up = evaluate(params);
        params[j] = saved - h;
        const double down = evaluate(params);
        params[j] = saved;
        grads[j] = (up - down) / (2.0 * h);
    }
    return grads;
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState &state) {
    if (params.size() != grads.size() || params.size() != state.first_moment.size() ||
        params.size() != state.second_moment.size()) {
        throw std::invalid_argument("adam_step: parameter, gradient and moment lengths differ");
    }
    ++state.step_count;
    const double t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(state.beta1, t);
    const double correction2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        double &m = state.first_moment[i];
        double &v = state.second_moment[i];
        m = state.beta1 * m + (1.0 - state.beta1) * grads[i];
        v = state.beta2 * v + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = m / correction1;
        const double v_hat = v / correction2;
        params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
}

} // namespace lqas
