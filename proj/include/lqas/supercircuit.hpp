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
 * @file supercircuit.hpp
 * Weight-shared super-circuit plus the evolutionary and local searches that
 * sample architectures from it.
 *
 * A genome assigns one gate to every (layer, qubit) slot: identity, RX, RY,
 * RZ, or CRX with the slot's qubit as target and any other qubit as control.
 * Gates of a layer are applied in ascending qubit order. Shared parameters
 * are keyed by (layer, qubit, option) where the option is 0..2 for RX/RY/RZ
 * and 3 + control for CRX, so each control partner owns its own angle.
 */

#include "lqas/circuit.hpp"
#include "lqas/classifier.hpp"
#include "lqas/rng.hpp"
#include "lqas/search_record.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lqas {

struct GateChoice {
    /// Identity, RX, RY, RZ or CRX.
    GateKind kind{GateKind::Identity};
    /// Control qubit, set only for CRX.
    std::optional<std::size_t> control;

    bool operator==(const GateChoice &) const = default;
};

class Genome {
  public:
    Genome() = default;
    /// All-identity genome.
    Genome(std::size_t n_layers, std::size_t n_qubits);

    [[nodiscard]] std::size_t n_layers() const noexcept { return n_layers_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const GateChoice &at(std::size_t layer, std::size_t qubit) const;
    /// Throws std::invalid_argument for a choice that is not a valid slot gate.
    void set(std::size_t layer, std::size_t qubit, GateChoice choice);

    /// Number of slots holding a rotation.
    [[nodiscard]] std::size_t parameter_count() const;
    /// 16 hex digit FNV-1a digest of the gene sequence.
    [[nodiscard]] std::string hash() const;
    /// Compact text such as "RX|I|CRX1;...", one layer per ';' group.
    [[nodiscard]] std::string to_string() const;

    bool operator==(const Genome &) const = default;

  private:
    std::size_t n_layers_{0};
    std::size_t n_qubits_{0};
    std::vector<GateChoice> genes_;
};

[[nodiscard]] Genome parse_genome(const std::string &text, std::size_t n_qubits);

/// One uniformly drawn slot gate: the kind is uniform over the five options,
/// then a CRX control is uniform over the other qubits.
[[nodiscard]] GateChoice random_gate(std::size_t qubit, std::size_t n_qubits, Rng &rng);
[[nodiscard]] Genome random_genome(std::size_t n_layers, std::size_t n_qubits, Rng &rng);

/// Each qubit's column of gates comes entirely from one parent, chosen by a
/// fair coin per qubit. A CRX whose control would clash is impossible since
/// controls never equal their own column.
[[nodiscard]] Genome crossover(const Genome &a, const Genome &b, Rng &rng);

/// Redraws exactly one random slot to a different gate.
[[nodiscard]] Genome mutate(const Genome &genome, Rng &rng);

struct SuperCircuit {
    std::size_t n_qubits{0};
    std::size_t n_layers{20};
    /// Flat n_layers x n_qubits x (3 + n_qubits) table.
    std::vector<double> params;
    LinearHead head;

    [[nodiscard]] std::size_t slot_index(std::size_t layer, std::size_t qubit,
                                         const GateChoice &choice) const;
};

/// Shared parameters uniform in [-init_range, init_range].
[[nodiscard]] SuperCircuit make_supercircuit(std::size_t n_qubits, std::size_t n_layers,
                                             LinearHead head, std::uint64_t seed,
                                             double init_range = 1e-2);

struct DecodedGenome {
    Model model;
    /// Shared slot index for every tape parameter.
    std::vector<std::size_t> slots;
};

/// Standalone tape with parameter values copied out of the shared table.
[[nodiscard]] DecodedGenome decode(const SuperCircuit &super, const Genome &genome);

/// Writes a decoded model's parameters and head back into the shared table.
void write_back(SuperCircuit &super, const DecodedGenome &decoded, const Model &trained);

/// Features computed straight from the shared table, without building a tape.
[[nodiscard]] std::vector<double> genome_features(const SuperCircuit &super,
                                                  const Genome &genome,
                                                  const StateVector &input);

/// Samples `n_sampled` genomes and trains each for `epochs_per_sample` on the
/// training split, updating only the slots it uses. Adam state resets for
/// every sample.
void supercircuit_train(SuperCircuit &super, const EncodedSplit &split, std::size_t n_sampled,
                        const SearchConfig &config, std::size_t epochs_per_sample = 1);

/// Scores a candidate model; larger is better.
using RankingHook = std::function<double(const Model &, const EncodedSplit &)>;

struct EvolutionConfig {
    std::size_t generations{20};
    std::size_t population{10};
    std::size_t top_k{5};
    bool fine_tune{false};
    /// Defaults to validation accuracy when empty.
    RankingHook ranking;
};

struct GenomeSearchResult {
    Genome best_genome;
    /// Best genome decoded, carrying fine-tuned weights when fine-tuning ran.
    Model best_model;
    double best_score{0.0};
    SearchRecord record;
    std::vector<EpochLogRow> epoch_log;
    /// Evolution: the last generation's population. Local: the accepted path.
    std::vector<Genome> genomes;
    /// Local search only: validation accuracy of each accepted genome.
    std::vector<double> accepted_scores;
    bool truncated{false};
};

/// Throws std::invalid_argument if population is odd or zero, or top_k is
/// zero or larger than the population.
[[nodiscard]] GenomeSearchResult evolutionary_search(const SuperCircuit &super,
                                                     const EncodedSplit &split,
                                                     const EvolutionConfig &evolution,
                                                     const SearchConfig &config,
                                                     const GenerationCallback &on_generation = {});

struct LocalSearchConfig {
    std::size_t iterations{20};
    std::size_t candidates_per_step{10};
    bool fine_tune{true};
    RankingHook ranking;
};

[[nodiscard]] GenomeSearchResult local_search(const SuperCircuit &super,
                                              const EncodedSplit &split,
                                              const LocalSearchConfig &local,
                                              const SearchConfig &config,
                                              const GenerationCallback &on_generation = {});

} // namespace lqas
