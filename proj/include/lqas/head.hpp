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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lqas {

/// Bias-free linear map from measured features to class logits.
struct LinearHead {
    std::size_t n_classes{0};
    std::size_t n_features{0};
    /// Row-major n_classes x n_features.
    std::vector<double> weights;
    bool trainable{true};

    [[nodiscard]] std::size_t param_count() const noexcept { return weights.size(); }
    [[nodiscard]] double at(std::size_t cls, std::size_t feature) const {
        return weights[cls * n_features + feature];
    }

    bool operator==(const LinearHead &) const = default;
};

/// Entries i.i.d. N(0, 1/n_features); trainable = false.
[[nodiscard]] LinearHead make_frozen_head(std::size_t n_classes, std::size_t n_features,
                                          std::uint64_t seed);

/// Same initial distribution as the frozen head, but trainable.
[[nodiscard]] LinearHead make_learnable_head(std::size_t n_classes, std::size_t n_features,
                                             std::uint64_t seed);

/// Throws NumericalError on non-finite features or logits.
[[nodiscard]] std::vector<double> head_forward(const LinearHead &head,
                                               std::span<const double> features);

[[nodiscard]] std::vector<double> softmax(std::span<const double> logits);

[[nodiscard]] double cross_entropy(std::span<const double> probabilities,
                                   std::span<const double> one_hot);
[[nodiscard]] double cross_entropy(std::span<const double> probabilities, std::size_t label);

/// Index of the largest logit; first index wins ties.
[[nodiscard]] std::size_t argmax(std::span<const double> values);

struct HeadGradients {
    /// dL/dlogits = p - y.
    std::vector<double> logit_grads;
    /// outer(p - y, features), row-major like LinearHead::weights.
    std::vector<double> weight_grads;
    /// head^T (p - y), the upstream gradient for the circuit.
    std::vector<double> feature_grads;
};

/// Softmax cross-entropy gradients for one sample.
[[nodiscard]] HeadGradients head_gradients(std::span<const double> features,
                                           std::span<const double> logits, std::size_t label,
                                           const LinearHead &head);

} // namespace lqas
