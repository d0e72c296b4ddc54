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
#include "lqas/supercircuit.hpp"

#include "lqas/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lqas {

namespace {

constexpr std::array<GateKind, 5> kSlotKinds{GateKind::Identity, GateKind::RX, GateKind::RY,
                                             GateKind::RZ, GateKind::CRX};

void check_choice(const GateChoice &choice, std::size_t qubit, std::size_t n_qubits) {
    switch (choice.kind) {
    case GateKind::Identity:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        if (choice.control) {
            throw std::invalid_argument("genome: only CRX slots carry a control");
        }
        return;
    case GateKind::CRX:
        if (!choice.control || *choice.control >= n_qubits || *choice.control == qubit) {
            throw std::invalid_argument("genome: CRX slot needs a control on another qubit");
        }
        return;
    case GateKind::CNOT:
        break;
    }
    throw std::invalid_argument("genome: CNOT is not a slot gate");
}

std::string gene_text(const GateChoice &g) {
    std::string text(lqas::to_string(g.kind));
    if (g.control) {
        text += std::to_string(*g.control);
    }
    return text;
}

double score_model(const RankingHook &hook, const Model &model, const EncodedSplit &split,
                   std::size_t workers) {
    if (hook) {
        return hook(model, split);
    }
    return evaluate(model, split.validation, workers).accuracy;
}

struct Scored {
    Model model;
    double score{0.0};
};

/// Decodes, optionally fine-tunes one epoch, and scores one genome.
Scored assess(const SuperCircuit &super, const Genome &genome, const EncodedSplit &split,
              bool fine_tune, const RankingHook &hook, const SearchConfig &config,
              std::uint64_t train_seed, std::size_t generation, std::size_t candidate,
              std::vector<EpochLogRow> &log) {
    Model model = decode(super, genome).model;
    if (fine_tune) {
        TrainResult tr = train(std::move(model), split.train, split.validation,
                               config.train_config(1, config.lr_search, train_seed));
        append_epoch_log(log, generation, candidate, tr.log);
        model = std::move(tr.model);
    }
    const double score = score_model(hook, model, split, config.workers);
    return {std::move(model), score};
}

void check_split(const EncodedSplit &split, const SuperCircuit &super) {
    if (split.train.empty() || split.validation.empty()) {
        throw std::invalid_argument("genome search needs training and validation samples");
    }
    if (split.n_qubits != super.n_qubits) {
        throw std::invalid_argument("genome search: super-circuit width does not match the data");
    }
}

} // namespace

Genome::Genome(std::size_t n_layers, std::size_t n_qubits)
    : n_layers_(n_layers), n_qubits_(n_qubits), genes_(n_layers * n_qubits) {}

const GateChoice &Genome::at(std::size_t layer, std::size_t qubit) const {
    if (layer >= n_layers_ || qubit >= n_qubits_) {
        throw std::out_of_range("genome slot out of range");
    }
    return genes_[layer * n_qubits_ + qubit];
}

void Genome::set(std::size_t layer, std::size_t qubit, GateChoice choice) {
    if (layer >= n_layers_ || qubit >= n_qubits_) {
        throw std::out_of_range("genome slot out of range");
    }
    check_choice(choice, qubit, n_qubits_);
    genes_[layer * n_qubits_ + qubit] = choice;
}

std::size_t Genome::parameter_count() const {
    return static_cast<std::size_t>(std::count_if(genes_.begin(), genes_.end(), [](const auto &g) {
        return g.kind != GateKind::Identity;
    }));
}

std::string Genome::to_string() const {
    std::string text;
    for (std::size_t l = 0; l < n_layers_; ++l) {
        if (l > 0) {
            text += ';';
        }
        for (std::size_t q = 0; q < n_qubits_; ++q) {
            if (q > 0) {
                text += '|';
            }
            text += gene_text(genes_[l * n_qubits_ + q]);
        }
    }
    return text;
}

std::string Genome::hash() const {
    return fnv1a_hex(std::to_string(n_qubits_) + ":" + to_string());
}

Genome parse_genome(const std::string &text, std::size_t n_qubits) {
    std::vector<std::vector<GateChoice>> layers;
    std::stringstream layer_stream(text);
    std::string layer_text;
    while (std::getline(layer_stream, layer_text, ';')) {
        std::vector<GateChoice> row;
        std::stringstream gene_stream(layer_text);
        std::string gene;
        while (std::getline(gene_stream, gene, '|')) {
            GateChoice choice;
            if (gene.rfind("CRX", 0) == 0) {
                choice.kind = GateKind::CRX;
                const std::string digits = gene.substr(3);
                if (digits.empty() ||
                    !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                    throw std::invalid_argument("genome: bad CRX control in '" + gene + "'");
                }
                choice.control = std::stoul(digits);
            } else {
                const std::optional<GateKind> kind = parse_gate_kind(gene);
                if (!kind) {
                    throw std::invalid_argument("genome: unknown gate '" + gene + "'");
                }
                choice.kind = *kind;
            }
            row.push_back(choice);
        }
        if (row.size() != n_qubits) {
            throw std::invalid_argument("genome: layer " + std::to_string(layers.size()) +
                                        " does not have one gate per qubit");
        }
        layers.push_back(std::move(row));
    }
    Genome genome(layers.size(), n_qubits);
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t q = 0; q < n_qubits; ++q) {
            genome.set(l, q, layers[l][q]);
        }
    }
    return genome;
}

GateChoice random_gate(std::size_t qubit, std::size_t n_qubits, Rng &rng) {
    const std::size_t n_kinds = n_qubits > 1 ? kSlotKinds.size() : kSlotKinds.size() - 1;
    std::uniform_int_distribution<std::size_t> pick_kind(0, n_kinds - 1);
    GateChoice choice{kSlotKinds[pick_kind(rng)], std::nullopt};
    if (choice.kind == GateKind::CRX) {
        std::uniform_int_distribution<std::size_t> pick(0, n_qubits - 2);
        std::size_t control = pick(rng);
        if (control >= qubit) {
            ++control;
        }
        choice.control = control;
    }
    return choice;
}

Genome random_genome(std::size_t n_layers, std::size_t n_qubits, Rng &rng) {
    Genome genome(n_layers, n_qubits);
    for (std::size_t l = 0; l < n_layers; ++l) {
        for (std::size_t q = 0; q < n_qubits; ++q) {
            genome.set(l, q, random_gate(q, n_qubits, rng));
        }
    }
    return genome;
}

Genome crossover(const Genome &a, const Genome &b, Rng &rng) {
    if (a.n_layers() != b.n_layers() || a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("crossover: parent shapes differ");
    }
    Genome child = a;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t q = 0; q < a.n_qubits(); ++q) {
        if (coin(rng)) {
            for (std::size_t l = 0; l < a.n_layers(); ++l) {
                child.set(l, q, b.at(l, q));
            }
        }
    }
    return child;
}

Genome mutate(const Genome &genome, Rng &rng) {
    if (genome.n_layers() == 0 || genome.n_qubits() == 0) {
        throw std::invalid_argument("mutate: empty genome");
    }
    std::uniform_int_distribution<std::size_t> pick_layer(0, genome.n_layers() - 1);
    std::uniform_int_distribution<std::size_t> pick_qubit(0, genome.n_qubits() - 1);
    const std::size_t l = pick_layer(rng);
    const std::size_t q = pick_qubit(rng);
    GateChoice next = genome.at(l, q);
    while (next == genome.at(l, q)) {
        next = random_gate(q, genome.n_qubits(), rng);
    }
    Genome child = genome;
    child.set(l, q, next);
    return child;
}

std::size_t SuperCircuit::slot_index(std::size_t layer, std::size_t qubit,
                                     const GateChoice &choice) const {
    std::size_t option = 0;
    switch (choice.kind) {
    case GateKind::RX: option = 0; break;
    case GateKind::RY: option = 1; break;
    case GateKind::RZ: option = 2; break;
    case GateKind::CRX: option = 3 + choice.control.value(); break;
    default: throw std::invalid_argument("slot_index: gate has no parameter");
    }
    return (layer * n_qubits + qubit) * (3 + n_qubits) + option;
}

SuperCircuit make_supercircuit(std::size_t n_qubits, std::size_t n_layers, LinearHead head,
                               std::uint64_t seed, double init_range) {
    if (head.n_features != 3 * n_qubits) {
        throw std::invalid_argument("super-circuit: head width does not match the qubits");
    }
    SuperCircuit super{n_qubits, n_layers, {}, std::move(head)};
    super.params.resize(n_layers * n_qubits * (3 + n_qubits));
    Rng rng = make_rng(seed, "supercircuit-init");
    std::uniform_real_distribution<double> dist(-init_range, init_range);
    for (double &p : super.params) {
        p = dist(rng);
    }
    return super;
}

DecodedGenome decode(const SuperCircuit &super, const Genome &genome) {
    if (genome.n_qubits() != super.n_qubits || genome.n_layers() != super.n_layers) {
        throw std::invalid_argument("decode: genome shape does not match the super-circuit");
    }
    DecodedGenome out{{CircuitTape(super.n_qubits), super.head}, {}};
    for (std::size_t l = 0; l < genome.n_layers(); ++l) {
        for (std::size_t q = 0; q < genome.n_qubits(); ++q) {
            const GateChoice &g = genome.at(l, q);
            if (g.kind == GateKind::Identity) {
                continue;
            }
            const std::size_t slot = super.slot_index(l, q, g);
            const std::size_t p = out.model.tape.add_param(super.params[slot]);
            out.model.tape.add_op({g.kind, q, g.control, p});
            out.slots.push_back(slot);
        }
    }
    return out;
}

void write_back(SuperCircuit &super, const DecodedGenome &decoded, const Model &trained) {
    const std::vector<double> &values = trained.tape.params();
    if (values.size() != decoded.slots.size()) {
        throw std::invalid_argument("write_back: parameter count mismatch");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        super.params[decoded.slots[i]] = values[i];
    }
    super.head = trained.head;
}

std::vector<double> genome_features(const SuperCircuit &super, const Genome &genome,
                                    const StateVector &input) {
    if (genome.n_qubits() != super.n_qubits || input.n_qubits() != super.n_qubits) {
        throw std::invalid_argument("genome_features: width mismatch");
    }
    StateVector state = input;
    for (std::size_t l = 0; l < genome.n_layers(); ++l) {
        for (std::size_t q = 0; q < genome.n_qubits(); ++q) {
            const GateChoice &g = genome.at(l, q);
            if (g.kind != GateKind::Identity) {
                apply_gate(state, g.kind, super.params[super.slot_index(l, q, g)], q, g.control);
            }
        }
    }
    return local_pauli_expectations(state);
}

void supercircuit_train(SuperCircuit &super, const EncodedSplit &split, std::size_t n_sampled,
                        const SearchConfig &config, std::size_t epochs_per_sample) {
    if (n_sampled == 0) {
        return;
    }
    check_split(split, super);
    Rng rng = make_rng(config.seed, "supercircuit-sample");
    for (std::size_t s = 0; s < n_sampled; ++s) {
        if (config.out_of_time()) {
            return;
        }
        const Genome genome = random_genome(super.n_layers, super.n_qubits, rng);
        DecodedGenome decoded = decode(super, genome);
        const TrainConfig tc = config.train_config(epochs_per_sample, config.lr_search,
                                                   derive_seed(config.seed, "supercircuit-train", s));
        TrainResult tr = train(decoded.model, split.train, {}, tc);
        write_back(super, decoded, tr.model);
    }
}

GenomeSearchResult evolutionary_search(const SuperCircuit &super, const EncodedSplit &split,
                                       const EvolutionConfig &evolution,
                                       const SearchConfig &config,
                                       const GenerationCallback &on_generation) {
    if (evolution.population == 0 || evolution.population % 2 != 0) {
        throw std::invalid_argument("evolutionary search needs an even, nonzero population");
    }
    if (evolution.top_k == 0 || evolution.top_k > evolution.population) {
        throw std::invalid_argument("evolutionary search: top_k must be in 1..population");
    }
    check_split(split, super);
    GenomeSearchResult result;
    result.record.policy = evolution.fine_tune ? "evolutionary-ft" : "evolutionary";

    Rng rng = make_rng(config.seed, "evolution");
    std::vector<Genome> population;
    for (std::size_t i = 0; i < evolution.population; ++i) {
        population.push_back(random_genome(super.n_layers, super.n_qubits, rng));
    }
    bool have_best = false;
    for (std::size_t g = 1; g <= evolution.generations; ++g) {
        if (config.out_of_time()) {
            result.truncated = true;
            break;
        }
        std::vector<Scored> scored;
        for (std::size_t i = 0; i < population.size(); ++i) {
            scored.push_back(assess(super, population[i], split, evolution.fine_tune,
                                    evolution.ranking, config,
                                    derive_seed(config.seed, "evolution-ft", g * 1000 + i), g, i,
                                    result.epoch_log));
        }
        std::vector<std::size_t> order(population.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (scored[a].score != scored[b].score) {
                return scored[a].score > scored[b].score;
            }
            return population[a].parameter_count() < population[b].parameter_count();
        });
        std::vector<bool> selected(population.size(), false);
        for (std::size_t r = 0; r < evolution.top_k; ++r) {
            selected[order[r]] = true;
        }
        for (std::size_t i = 0; i < population.size(); ++i) {
            result.record.rows.push_back({g, i, population[i].hash(), scored[i].score,
                                          scored[i].model.tape.num_params(), selected[i]});
        }
        const std::size_t top = order.front();
        if (!have_best || scored[top].score > result.best_score) {
            have_best = true;
            result.best_score = scored[top].score;
            result.best_genome = population[top];
            result.best_model = scored[top].model;
        }

        std::vector<Genome> parents;
        for (std::size_t r = 0; r < evolution.top_k; ++r) {
            parents.push_back(population[order[r]]);
        }
        std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
        std::vector<Genome> next;
        const std::size_t half = evolution.population / 2;
        for (std::size_t i = 0; i < half; ++i) {
            const Genome &a = parents[pick(rng)];
            const Genome &b = parents[pick(rng)];
            next.push_back(crossover(a, b, rng));
        }
        for (std::size_t i = 0; i < half; ++i) {
            next.push_back(mutate(parents[pick(rng)], rng));
        }
        population = std::move(next);
        if (on_generation) {
            on_generation(g, result.best_model);
        }
    }
    if (!have_best) {
        result.best_genome = population.front();
        Scored s = assess(super, population.front(), split, false, evolution.ranking, config, 0,
                          0, 0, result.epoch_log);
        result.best_model = std::move(s.model);
        result.best_score = s.score;
    }
    result.genomes = std::move(population);
    return result;
}

GenomeSearchResult local_search(const SuperCircuit &super, const EncodedSplit &split,
                                const LocalSearchConfig &local, const SearchConfig &config,
                                const GenerationCallback &on_generation) {
    check_split(split, super);
    GenomeSearchResult result;
    result.record.policy = "local";
    SuperCircuit working = super;

    Rng rng = make_rng(config.seed, "local");
    Genome current = random_genome(super.n_layers, super.n_qubits, rng);
    Scored best = assess(working, current, split, local.fine_tune, local.ranking, config,
                         derive_seed(config.seed, "local-ft", 0), 0, 0, result.epoch_log);
    if (local.fine_tune) {
        write_back(working, decode(working, current), best.model);
    }
    result.record.rows.push_back(
        {0, 0, current.hash(), best.score, best.model.tape.num_params(), true});
    result.genomes.push_back(current);
    result.accepted_scores.push_back(best.score);

    for (std::size_t step = 1; step <= local.iterations; ++step) {
        if (config.out_of_time()) {
            result.truncated = true;
            break;
        }
        std::vector<Genome> neighbours;
        std::vector<Scored> scored;
        for (std::size_t c = 0; c < local.candidates_per_step; ++c) {
            neighbours.push_back(mutate(current, rng));
            scored.push_back(assess(working, neighbours.back(), split, local.fine_tune,
                                    local.ranking, config,
                                    derive_seed(config.seed, "local-ft", step * 1000 + c), step, c,
                                    result.epoch_log));
        }
        std::optional<std::size_t> winner;
        for (std::size_t c = 0; c < scored.size(); ++c) {
            if (scored[c].score > best.score &&
                (!winner || scored[c].score > scored[*winner].score)) {
                winner = c;
            }
        }
        for (std::size_t c = 0; c < scored.size(); ++c) {
            result.record.rows.push_back({step, c, neighbours[c].hash(), scored[c].score,
                                          scored[c].model.tape.num_params(), winner == c});
        }
        if (winner) {
            current = neighbours[*winner];
            best = std::move(scored[*winner]);
            if (local.fine_tune) {
                write_back(working, decode(working, current), best.model);
            }
            result.genomes.push_back(current);
            result.accepted_scores.push_back(best.score);
        }
        if (on_generation) {
            on_generation(step, best.model);
        }
    }
    result.best_genome = current;
    result.best_model = std::move(best.model);
    result.best_score = best.score;
    return result;
}

} // namespace lqas
