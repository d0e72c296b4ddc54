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
#include "lqas/layered.hpp"

#include "lqas/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lqas {

namespace {

std::vector<int> entangling_candidates(std::size_t count, Rng &rng) {
    std::vector<int> pool{3, 4, 5, 6, 7, 8, 9};
    std::vector<int> out;
    while (out.size() < count) {
        std::vector<int> round = pool;
        std::shuffle(round.begin(), round.end(), rng);
        for (const int t : round) {
            if (out.size() == count) {
                break;
            }
            out.push_back(t);
        }
    }
    return out;
}

bool better(const LayeredCandidate &a, const LayeredCandidate &b) {
    if (a.final_val_acc != b.final_val_acc) {
        return a.final_val_acc > b.final_val_acc;
    }
    return a.n_quantum_params < b.n_quantum_params;
}

} // namespace

Model initial_model(std::size_t n_qubits, std::size_t n_classes, bool learnable_head,
                    std::uint64_t seed) {
    const std::uint64_t head_seed = derive_seed(seed, "head");
    LinearHead head = learnable_head ? make_learnable_head(n_classes, 3 * n_qubits, head_seed)
                                     : make_frozen_head(n_classes, 3 * n_qubits, head_seed);
    return {CircuitTape(n_qubits), std::move(head)};
}

LayeredResult layered_search(const EncodedSplit &split, Model initial,
                             const LayeredConfig &layered, const SearchConfig &config,
                             const GenerationCallback &on_generation) {
    if (layered.cycle.empty()) {
        throw std::invalid_argument("layered search needs a nonempty layer cycle");
    }
    if (layered.candidates_per_generation == 0) {
        throw std::invalid_argument("layered search needs at least one candidate per generation");
    }
    if (split.train.empty() || split.validation.empty()) {
        throw std::invalid_argument("layered search needs training and validation samples");
    }
    LayeredResult result;
    result.record.policy = "layered";
    Model parent = std::move(initial);
    double parent_acc = evaluate(parent, split.validation, config.workers).accuracy;

    for (std::size_t g = 1; g <= layered.generations; ++g) {
        if (config.out_of_time()) {
            result.truncated = true;
            break;
        }
        LayeredGeneration gen;
        gen.generation = g;
        gen.type = layered.cycle[(g - 1) % layered.cycle.size()];
        gen.parent_val_acc = parent_acc;
        gen.parent_params = parent.tape.num_params();
        gen.parent_parameterized_gates = parent.tape.num_parameterized_ops();

        const std::size_t n_cand = layered.candidates_per_generation;
        std::vector<int> templates(n_cand, kPruneTemplate);
        if (gen.type == LayerType::SingleQubit) {
            for (std::size_t i = 0; i < n_cand; ++i) {
                templates[i] = static_cast<int>(i % 3);
            }
        } else if (gen.type == LayerType::Entangling) {
            Rng rng = make_rng(config.seed, "entangling", g);
            templates = entangling_candidates(n_cand, rng);
        }

        std::vector<Model> trained;
        const TrainConfig tc = config.train_config(config.candidate_epochs, config.lr_search,
                                                   derive_seed(config.seed, "train", g));
        for (std::size_t i = 0; i < n_cand; ++i) {
            LayeredCandidate cand;
            cand.template_id = templates[i];
            Model model = parent;
            if (templates[i] == kPruneTemplate) {
                PruneResult pruned = prune_tape(parent.tape, layered.prune_threshold,
                                                layered.prune_proportion,
                                                derive_seed(config.seed, "prune", g * 1000 + i));
                cand.gates_removed = pruned.removed_ops.size();
                model.tape = std::move(pruned.tape);
            } else {
                model.tape = append_layer(parent.tape, templates[i]);
            }
            cand.initial_val_acc = evaluate(model, split.validation, config.workers).accuracy;
            TrainResult tr = train(std::move(model), split.train, split.validation, tc);
            cand.final_val_acc = tr.log.empty() ? cand.initial_val_acc : tr.log.back().val_acc;
            cand.n_quantum_params = tr.model.tape.num_params();
            append_epoch_log(result.epoch_log, g, i, tr.log);
            trained.push_back(std::move(tr.model));
            gen.candidates.push_back(cand);
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i < n_cand; ++i) {
            if (better(gen.candidates[i], gen.candidates[best])) {
                best = i;
            }
        }
        gen.selected = best;
        for (std::size_t i = 0; i < n_cand; ++i) {
            const LayeredCandidate &c = gen.candidates[i];
            const std::string arch = c.template_id == kPruneTemplate
                                         ? "prune:" + std::to_string(i)
                                         : "template:" + std::to_string(c.template_id);
            result.record.rows.push_back(
                {g, i, arch, c.final_val_acc, c.n_quantum_params, i == best});
        }
        parent = std::move(trained[best]);
        parent_acc = gen.candidates[best].final_val_acc;
        result.generations.push_back(std::move(gen));
        if (on_generation) {
            on_generation(g, parent);
        }
    }
    result.best = std::move(parent);
    return result;
}

} // namespace lqas
