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
#include "lqas/classifier.hpp"

#include "lqas/parallel.hpp"
#include "lqas/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lqas {

namespace {

struct SampleGrad {
    double loss{0.0};
    bool correct{false};
    std::vector<double> circuit;
    std::vector<double> head;
};

SampleGrad sample_gradient(const Model &model, const EncodedSample &sample,
                           GradientMethod method) {
    StateVector output = evaluate_tape(model.tape, sample.state);
    const std::vector<double> features = local_pauli_expectations(output);
    const std::vector<double> logits = head_forward(model.head, features);
    HeadGradients hg = head_gradients(features, logits, sample.label, model.head);
    SampleGrad g;
    g.loss = cross_entropy(softmax(logits), sample.label);
    g.correct = argmax(logits) == sample.label;
    if (method == GradientMethod::Adjoint) {
        g.circuit = adjoint_vjp(model.tape, std::move(output), hg.feature_grads);
    } else {
        g.circuit = parameter_shift_vjp(model.tape, sample.state, hg.feature_grads);
    }
    if (model.head.trainable) {
        g.head = std::move(hg.weight_grads);
    }
    return g;
}

void check_labels(const Model &model, const std::vector<EncodedSample> &samples) {
    for (const EncodedSample &s : samples) {
        if (s.label >= model.head.n_classes) {
            throw std::invalid_argument("sample label " + std::to_string(s.label) +
                                        " exceeds head classes");
        }
        if (s.state.n_qubits() != model.tape.n_qubits()) {
            throw std::invalid_argument("sample state and tape qubit counts differ");
        }
    }
}

} // namespace

std::vector<double> extract_features(const CircuitTape &tape, const DensityGrid &grid) {
    if (tape.n_qubits() != static_cast<std::size_t>(3 * grid.k())) {
        throw std::invalid_argument("tape has " + std::to_string(tape.n_qubits()) +
                                    " qubits but the grid encodes " +
                                    std::to_string(3 * grid.k()));
    }
    return circuit_features(tape, amplitude_encode(grid));
}

std::vector<EncodedSample> encode_samples(const std::vector<Sample> &samples) {
    std::vector<EncodedSample> out;
    out.reserve(samples.size());
    for (const Sample &s : samples) {
        out.push_back({amplitude_encode(s.grid), s.label});
    }
    return out;
}

EncodedSplit encode_split(const DatasetSplit &split) {
    EncodedSplit out;
    out.train = encode_samples(split.train);
    out.validation = encode_samples(split.validation);
    out.test = encode_samples(split.test);
    out.n_classes = split.n_classes();
    for (const auto *part : {&out.train, &out.validation, &out.test}) {
        if (!part->empty()) {
            out.n_qubits = part->front().state.n_qubits();
        }
    }
    return out;
}

FeatureObjective head_objective(const LinearHead &head, std::size_t label) {
    return [&head, label](std::span<const double> features, std::span<double> feature_grad) {
        const std::vector<double> logits = head_forward(head, features);
        if (!feature_grad.empty()) {
            const HeadGradients g = head_gradients(features, logits, label, head);
            std::copy(g.feature_grads.begin(), g.feature_grads.end(), feature_grad.begin());
        }
        return cross_entropy(softmax(logits), label);
    };
}

TrainResult train(Model model, const std::vector<EncodedSample> &train_set,
                  const std::vector<EncodedSample> &validation_set, const TrainConfig &config) {
    if (config.batch_size == 0 || !(config.learning_rate > 0.0)) {
        throw std::invalid_argument("train: batch size and learning rate must be positive");
    }
    if (model.head.n_features != 3 * model.tape.n_qubits()) {
        throw std::invalid_argument("train: head width does not match the circuit features");
    }
    check_labels(model, train_set);
    check_labels(model, validation_set);

    TrainResult result;
    if (config.epochs > 0 && train_set.empty()) {
        throw std::invalid_argument("train: empty training set");
    }
    AdamState circuit_adam(model.tape.num_params(), config.learning_rate);
    AdamState head_adam(model.head.trainable ? model.head.param_count() : 0,
                        config.learning_rate);
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        const Model last_good = model;
        Rng rng = make_rng(config.seed, "shuffle", epoch);
        std::shuffle(order.begin(), order.end(), rng);

        double loss_sum = 0.0;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t stop = std::min(order.size(), start + config.batch_size);
            std::vector<SampleGrad> grads(stop - start);
            try {
                parallel_for(grads.size(), config.workers, [&](std::size_t i) {
                    grads[i] = sample_gradient(model, train_set[order[start + i]], config.gradient);
                });
            } catch (const NumericalError &e) {
                throw DivergenceError(std::string("training diverged in epoch ") +
                                          std::to_string(epoch) + ": " + e.what(),
                                      last_good);
            }
            std::vector<double> circuit_sum(model.tape.num_params(), 0.0);
            std::vector<double> head_sum(head_adam.first_moment.size(), 0.0);
            for (const SampleGrad &g : grads) {
                if (!std::isfinite(g.loss)) {
                    throw DivergenceError("non-finite loss in epoch " + std::to_string(epoch),
                                          last_good);
                }
                loss_sum += g.loss;
                correct += g.correct ? 1 : 0;
                for (std::size_t j = 0; j < circuit_sum.size(); ++j) {
                    circuit_sum[j] += g.circuit[j];
                }
                for (std::size_t j = 0; j < head_sum.size(); ++j) {
                    head_sum[j] += g.head[j];
                }
            }
            const double scale = 1.0 / static_cast<double>(grads.size());
            for (double &v : circuit_sum) {
                v *= scale;
            }
            for (double &v : head_sum) {
                v *= scale;
            }
            adam_step(model.tape.mutable_params(), circuit_sum, circuit_adam);
            if (model.head.trainable) {
                adam_step(model.head.weights, head_sum, head_adam);
            }
        }
        EpochRecord record;
        record.epoch = epoch;
        record.train_loss = loss_sum / static_cast<double>(train_set.size());
        record.train_acc = static_cast<double>(correct) / static_cast<double>(train_set.size());
        record.n_quantum_params = model.tape.num_params();
        if (!validation_set.empty()) {
            record.val_acc = evaluate(model, validation_set, config.workers).accuracy;
        }
        result.log.push_back(record);
    }
    result.model = std::move(model);
    return result;
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
    std::size_t total = 0;
    for (std::size_t p = 0; p < n_classes_; ++p) {
        total += at(truth, p);
    }
    return total;
}

std::size_t ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t total = 0;
    for (std::size_t c = 0; c < n_classes_; ++c) {
        total += at(c, c);
    }
    return total;
}

Evaluation evaluate(const Model &model, const std::vector<EncodedSample> &samples,
                    std::size_t workers) {
    if (samples.empty()) {
        throw std::invalid_argument("evaluate: empty sample list");
    }
    check_labels(model, samples);
    Evaluation out;
    out.predictions.resize(samples.size());
    parallel_for(samples.size(), workers, [&](std::size_t i) {
        const std::vector<double> features = circuit_features(model.tape, samples[i].state);
        out.predictions[i] = argmax(head_forward(model.head, features));
    });
    out.confusion = ConfusionMatrix(model.head.n_classes);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out.confusion.add(samples[i].label, out.predictions[i]);
    }
    out.accuracy = static_cast<double>(out.confusion.trace()) /
                   static_cast<double>(out.confusion.total());
    return out;
}

} // namespace lqas
