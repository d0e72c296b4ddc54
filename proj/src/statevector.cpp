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
#include "lqas/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lqas {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit(const StateVector &state, std::size_t qubit, const char *what) {
    if (qubit >= state.n_qubits()) {
        throw std::out_of_range(std::string(what) + " qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.n_qubits()) +
                                "-qubit state");
    }
}

void check_wires(const StateVector &state, GateKind kind, std::size_t target,
                 std::optional<std::size_t> control) {
    check_qubit(state, target, "target");
    if (is_controlled(kind)) {
        if (!control) {
            throw std::invalid_argument(std::string(to_string(kind)) + " requires a control qubit");
        }
        check_qubit(state, *control, "control");
        if (*control == target) {
            throw std::invalid_argument("control and target must differ");
        }
    } else if (control) {
        throw std::invalid_argument(std::string(to_string(kind)) + " takes no control qubit");
    }
}

// Applies a 2x2 block to every amplitude pair along `target` whose control bit
// (if any) is set.
void apply_block(StateVector &state, const std::array<Complex, 4> &m, std::size_t target,
                 std::optional<std::size_t> control) {
    auto amps = state.amplitudes();
    const std::size_t n = amps.size();
    const std::size_t tmask = std::size_t{1} << state.bit_of(target);
    const std::size_t cmask = control ? (std::size_t{1} << state.bit_of(*control)) : 0;
    for (std::size_t base = 0; base < n; base += 2 * tmask) {
        for (std::size_t i0 = base; i0 < base + tmask; ++i0) {
            if ((i0 & cmask) != cmask) {
                continue;
            }
            const std::size_t i1 = i0 | tmask;
            const Complex a0 = amps[i0];
            const Complex a1 = amps[i1];
            amps[i0] = m[0] * a0 + m[1] * a1;
            amps[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

std::array<Complex, 4> single_qubit_block(GateKind kind, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
    case GateKind::RX:
    case GateKind::CRX:
        return {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
    case GateKind::RY:
        return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
    case GateKind::RZ:
        return {Complex{c, -s}, Complex{}, Complex{}, Complex{c, s}};
    case GateKind::CNOT:
        return {Complex{}, Complex{1, 0}, Complex{1, 0}, Complex{}};
    case GateKind::Identity:
        break;
    }
    return {Complex{1, 0}, Complex{}, Complex{}, Complex{1, 0}};
}

} // namespace

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CRX:
        return "CRX";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::Identity:
        return "I";
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) noexcept {
    for (const GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CRX,
                                GateKind::CNOT, GateKind::Identity}) {
        if (name == to_string(kind)) {
            return kind;
        }
    }
    return std::nullopt;
}

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amplitudes_(std::size_t{1} << n_qubits) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << n_qubits_)) {
        throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                    " does not match 2^" + std::to_string(n_qubits_));
    }
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const Complex &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

StateVector prepare_state(std::span<const double> amplitudes, std::size_t n_qubits) {
    if (amplitudes.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("prepare_state: expected " +
                                    std::to_string(std::size_t{1} << n_qubits) +
                                    " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    double norm = 0.0;
    std::vector<Complex> amps(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (!(amplitudes[i] >= 0.0)) {
            throw std::invalid_argument("prepare_state: amplitudes must be non-negative reals");
        }
        norm += amplitudes[i] * amplitudes[i];
        amps[i] = amplitudes[i];
    }
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument("prepare_state: sum of squared amplitudes is " +
                                    std::to_string(norm) + ", expected 1");
    }
    return StateVector(n_qubits, std::move(amps));
}

GateMatrix gate_matrix(GateKind kind, double angle) {
    GateMatrix out;
    const auto block = single_qubit_block(kind, angle);
    if (!is_controlled(kind)) {
        out.dim = 2;
        for (std::size_t i = 0; i < 4; ++i) {
            out.data[i] = block[i];
        }
        return out;
    }
    out.dim = 4;
    out(0, 0) = 1.0;
    out(1, 1) = 1.0;
    out(2, 2) = block[0];
    out(2, 3) = block[1];
    out(3, 2) = block[2];
    out(3, 3) = block[3];
    return out;
}

void apply_gate(StateVector &state, GateKind kind, double angle, std::size_t target,
                std::optional<std::size_t> control) {
    check_wires(state, kind, target, control);
    if (kind == GateKind::Identity) {
        return;
    }
    apply_block(state, single_qubit_block(kind, angle), target, control);
}

void apply_generator(StateVector &state, GateKind kind, std::size_t target,
                     std::optional<std::size_t> control) {
    check_wires(state, kind, target, control);
    switch (kind) {
    case GateKind::RX:
        apply_pauli(state, PauliBasis::X, target);
        return;
    case GateKind::RY:
        apply_pauli(state, PauliBasis::Y, target);
        return;
    case GateKind::RZ:
        apply_pauli(state, PauliBasis::Z, target);
        return;
    case GateKind::CRX: {
        // |1><1|_c (x) X_t: zero the control-0 subspace, flip target elsewhere.
        auto amps = state.amplitudes();
        const std::size_t cmask = std::size_t{1} << state.bit_of(*control);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & cmask) == 0) {
                amps[i] = 0.0;
            }
        }
        apply_block(state, {Complex{}, Complex{1, 0}, Complex{1, 0}, Complex{}}, target,
                    control);
        return;
    }
    case GateKind::CNOT:
    case GateKind::Identity:
        break;
    }
    throw std::invalid_argument(std::string(to_string(kind)) + " has no generator");
}

void apply_pauli(StateVector &state, PauliBasis basis, std::size_t qubit) {
    check_qubit(state, qubit, "measured");
    switch (basis) {
    case PauliBasis::X:
        apply_block(state, {Complex{}, Complex{1, 0}, Complex{1, 0}, Complex{}}, qubit,
                    std::nullopt);
        break;
    case PauliBasis::Y:
        apply_block(state, {Complex{}, -kI, kI, Complex{}}, qubit, std::nullopt);
        break;
    case PauliBasis::Z:
        apply_block(state, {Complex{1, 0}, Complex{}, Complex{}, Complex{-1, 0}}, qubit,
                    std::nullopt);
        break;
    }
}

double pauli_expectation(const StateVector &state, PauliBasis basis, std::size_t qubit) {
    check_qubit(state, qubit, "measured");
    const auto amps = state.amplitudes();
    const std::size_t tmask = std::size_t{1} << state.bit_of(qubit);
    double value = 0.0;
    for (std::size_t base = 0; base < amps.size(); base += 2 * tmask) {
        for (std::size_t i0 = base; i0 < base + tmask; ++i0) {
            const Complex a0 = amps[i0];
            const Complex a1 = amps[i0 | tmask];
            switch (basis) {
            case PauliBasis::X:
                value += 2.0 * (std::conj(a0) * a1).real();
                break;
            case PauliBasis::Y:
                value += 2.0 * (std::conj(a0) * a1).imag();
                break;
            case PauliBasis::Z:
                value += std::norm(a0) - std::norm(a1);
                break;
            }
        }
    }
    return value;
}

std::vector<double> local_pauli_expectations(const StateVector &state) {
    const std::size_t n = state.n_qubits();
    std::vector<double> out(3 * n);
    for (std::size_t b = 0; b < 3; ++b) {
        for (std::size_t q = 0; q < n; ++q) {
            out[b * n + q] = pauli_expectation(state, kAllBases[b], q);
        }
    }
    return out;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    Complex total{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += std::conj(x[i]) * y[i];
    }
    return total;
}

} // namespace lqas
