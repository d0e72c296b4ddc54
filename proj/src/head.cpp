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
#include "lqas/head.hpp"

#include "lqas/errors.hpp"
#include "lqas/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace lqas {

namespace {

LinearHead gaussian_head(std::size_t n_classes, std::size_t n_features, std::uint64_t seed,
                         bool trainable) {
    if (n_classes == 0 || n_features == 0) {
        throw std::invalid_argument("linear head needs at least one class and one feature");
    }
    LinearHead head{n_classes, n_features, std::vector<double>(n_classes * n_features),
                    trainable};
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(n_features)));
    for (double &w : head.weights) {
        w = normal(rng);
    }
    return head;
}

} // namespace

LinearHead make_frozen_head(std::size_t n_classes, std::size_t n_features, std::uint64_t seed) {
    return gaussian_head(n_classes, n_features, seed, false);
}

LinearHead make_learnable_head(std::size_t n_classes, std::size_t n_features,
                               std::uint64_t seed) {
    return gaussian_head(n_classes, n_features, seed, true);
}

std::vector<double> head_forward(const LinearHead &head, std::span<const double> features) {
    if (features.size() != head.n_features) {
        throw std::invalid_argument("head expects " + std::to_string(head.n_features) +
                                    " features, got " + std::to_string(features.size()));
    }
    std::vector<double> logits(head.n_classes, 0.0);
    for (std::size_t c = 0; c < head.n_classes; ++c) {
        double z = 0.0;
        for (std::size_t f = 0; f < head.n_features; ++f) {
            z += head.weights[c * head.n_features + f] * features[f];
        }
        if (!std::isfinite(z)) {
            throw NumericalError("non-finite logit for class " + std::to_string(c));
        }
        logits[c] = z;
    }
    return logits;
}

std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) {
        return {};
    }
    const double top = *std::max_element(logits.begin(), logits.end());
    if (!std::isfinite(top)) {
        throw NumericalError("softmax of non-finite logits");
    }
    std::vector<double> out(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (std::isnan(logits[i])) {
            throw NumericalError("softmax of NaN logit");
        }
        out[i] = std::exp(logits[i] - top);
        total += out[i];
    }
    for (double &p : out) {
        p /= total;
    }
    return out;
}

double cross_entropy(std::span<const double> probabilities, std::span<const double> one_hot) {
    if (probabilities.size() != one_hot.size()) {
        throw std::invalid_argument("cross_entropy: dimension mismatch");
    }
    double loss = 0.0;
    for (std::size_t j = 0; j < one_hot.size(); ++j) {
        if (one_hot[j] != 0.0) {
            loss -= one_hot[j] * std::log(probabilities[j]);
        }
    }
    return loss == 0.0 ? 0.0 : loss;
}

double cross_entropy(std::span<const double> probabilities, std::size_t label) {
    if (label >= probabilities.size()) {
        throw std::out_of_range("label out of range");
    }
    const double loss = -std::log(probabilities[label]);
    return loss == 0.0 ? 0.0 : loss;
}

std::size_t argmax(std::span<const double> values) {
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                    values.begin());
}

HeadGradients head_gradients(std::span<const double> features, std::span<const double> logits,
                             std::size_t label, const LinearHead &head) {
    if (label >= head.n_classes || logits.size() != head.n_classes ||
        features.size() != head.n_features) {
        throw std::invalid_argument("head_gradients: dimension mismatch");
    }
    HeadGradients g;
    g.logit_grads = softmax(logits);
    g.logit_grads[label] -= 1.0;
    g.weight_grads.resize(head.n_classes * head.n_features);
    g.feature_grads.assign(head.n_features, 0.0);
    for (std::size_t c = 0; c < head.n_classes; ++c) {
        const double d = g.logit_grads[c];
        for (std::size_t f = 0; f < head.n_features; ++f) {
            g.weight_grads[c * head.n_features + f] = d * features[f];
            g.feature_grads[f] += head.weights[c * head.n_features + f] * d;
        }
    }
    return g;
}

} // namespace lqas
