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
 * @file layered.hpp
 * Layer-by-layer architecture search.
 *
 * Starting from the identity circuit, every generation extends the current
 * model with candidate layers of one type (the type cycles through
 * `cycle`), trains each candidate briefly with the parent's parameters
 * warm-started and still trainable, and keeps the candidate with the best
 * final-epoch validation accuracy. Ties go to fewer quantum parameters, then
 * to the lower candidate index.
 *
 * Candidate sets per layer type:
 *   single-qubit  templates 0, 1, 2
 *   entangling    distinct templates drawn uniformly from 3..9
 *   prune         seeded pruning actions with |angle| < threshold
 */

#include "lqas/circuit.hpp"
#include "lqas/classifier.hpp"
#include "lqas/search_record.hpp"

#include <cstddef>
#include <numbers>
#include <vector>

namespace lqas {

struct LayeredConfig {
    std::vector<LayerType> cycle{LayerType::SingleQubit, LayerType::Entangling,
                                 LayerType::Prune};
    std::size_t generations{20};
    std::size_t candidates_per_generation{3};
    double prune_threshold{std::numbers::pi / 10.0};
    double prune_proportion{0.5};
};

struct LayeredCandidate {
    /// Template id, or kPruneTemplate.
    int template_id{0};
    std::size_t gates_removed{0};
    /// Validation accuracy before any training of the candidate.
    double initial_val_acc{0.0};
    double final_val_acc{0.0};
    std::size_t n_quantum_params{0};
};

struct LayeredGeneration {
    std::size_t generation{0};
    LayerType type{LayerType::SingleQubit};
    double parent_val_acc{0.0};
    std::size_t parent_params{0};
    std::size_t parent_parameterized_gates{0};
    std::vector<LayeredCandidate> candidates;
    std::size_t selected{0};
};

struct LayeredResult {
    Model best;
    SearchRecord record;
    std::vector<EpochLogRow> epoch_log;
    std::vector<LayeredGeneration> generations;
    /// Set when the deadline stopped the search early.
    bool truncated{false};
};

/// Throws std::invalid_argument for an empty cycle or empty training split.
[[nodiscard]] LayeredResult layered_search(const EncodedSplit &split, Model initial,
                                           const LayeredConfig &layered,
                                           const SearchConfig &config,
                                           const GenerationCallback &on_generation = {});

/// Identity circuit on `n_qubits` with the requested head flavour.
[[nodiscard]] Model initial_model(std::size_t n_qubits, std::size_t n_classes,
                                  bool learnable_head, std::uint64_t seed);

} // namespace lqas
