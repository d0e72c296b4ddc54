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
 * @file statevector.hpp
 * Dense statevector simulation over n qubits.
 *
 * Amplitude layout: qubit 0 is the most significant bit of the basis-state
 * index, so for three k-qubit registers |x>|y>|z> the index is
 * x * 2^(2k) + y * 2^k + z.
 *
 * Angle convention: every public angle is the full rotation angle, i.e.
 * RX(a) = exp(-i a X / 2). Rotation generators therefore have eigenvalues
 * +-1/2 and the parameter-shift rule uses shifts of +-pi/2.
 */

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lqas {

using Complex = std::complex<double>;

enum class GateKind { RX, RY, RZ, CRX, CNOT, Identity };

enum class PauliBasis { X, Y, Z };

inline constexpr std::array<PauliBasis, 3> kAllBases{PauliBasis::X, PauliBasis::Y,
                                                    PauliBasis::Z};

[[nodiscard]] constexpr bool is_parameterized(GateKind kind) noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
           kind == GateKind::CRX;
}

[[nodiscard]] constexpr bool is_controlled(GateKind kind) noexcept {
    return kind == GateKind::CRX || kind == GateKind::CNOT;
}

[[nodiscard]] std::string_view to_string(GateKind kind) noexcept;
[[nodiscard]] std::optional<GateKind> parse_gate_kind(std::string_view name) noexcept;

/// Row-major 2x2 or 4x4 complex matrix. For two-qubit gates the row index is
/// 2 * control_bit + target_bit.
struct GateMatrix {
    std::size_t dim{2};
    std::array<Complex, 16> data{};

    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return data[row * dim + col];
    }
    Complex &operator()(std::size_t row, std::size_t col) { return data[row * dim + col]; }
};

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits = 0);

    /// Takes ownership of raw amplitudes; length must be 2^n_qubits. No norm check.
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }

    [[nodiscard]] Complex operator[](std::size_t index) const { return amplitudes_[index]; }

    [[nodiscard]] double norm_squared() const noexcept;

    /// Bit position (from the least significant end) of the given qubit.
    [[nodiscard]] std::size_t bit_of(std::size_t qubit) const noexcept {
        return n_qubits_ - 1 - qubit;
    }

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Builds a state directly from real non-negative amplitudes.
/// Throws std::invalid_argument on dimension mismatch or when the sum of
/// squares deviates from 1 by more than 1e-9.
[[nodiscard]] StateVector prepare_state(std::span<const double> amplitudes,
                                        std::size_t n_qubits);

[[nodiscard]] GateMatrix gate_matrix(GateKind kind, double angle);

/// Applies one gate in place by strided iteration over amplitude pairs.
void apply_gate(StateVector &state, GateKind kind, double angle, std::size_t target,
                std::optional<std::size_t> control = std::nullopt);

/// Applies the Hermitian generator G of a parameterized gate, where the gate is
/// exp(-i angle G / 2): X, Y, Z on the target, or |1><1|_control (x) X_target.
void apply_generator(StateVector &state, GateKind kind, std::size_t target,
                     std::optional<std::size_t> control = std::nullopt);

/// Applies a single-qubit Pauli operator in place.
void apply_pauli(StateVector &state, PauliBasis basis, std::size_t qubit);

[[nodiscard]] double pauli_expectation(const StateVector &state, PauliBasis basis,
                                       std::size_t qubit);

/// All local expectations, basis-major (X for every qubit, then Y, then Z).
[[nodiscard]] std::vector<double> local_pauli_expectations(const StateVector &state);

/// <a|b>
[[nodiscard]] Complex inner_product(const StateVector &a, const StateVector &b);

} // namespace lqas
