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

#include "lqas/circuit.hpp"
#include "lqas/dataset.hpp"
#include "lqas/errors.hpp"
#include "lqas/gradient.hpp"
#include "lqas/head.hpp"
#include "lqas/pointcloud.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace lqas {

/// Number of measured features for granularity k: 3 bases x 3k qubits.
[[nodiscard]] constexpr std::size_t feature_count(int k) noexcept {
    return 9 * static_cast<std::size_t>(k);
}

/// X, Y, Z expectations (basis-major, qubit-ascending) after the tape acts on
/// the amplitude-encoded grid.
[[nodiscard]] std::vector<double> extract_features(const CircuitTape &tape,
                                                   const DensityGrid &grid);

/// Cross-entropy of the head's softmax against `label`, as a feature
/// objective. Keeps a reference to `head`.
[[nodiscard]] FeatureObjective head_objective(const LinearHead &head, std::size_t label);

struct Model {
    CircuitTape tape;
    LinearHead head;

    bool operator==(const Model &) const = default;
};

/// A sample with its amplitude-encoded input state cached.
struct EncodedSample {
    StateVector state;
    std::size_t label{0};
};

[[nodiscard]] std::vector<EncodedSample> encode_samples(const std::vector<Sample> &samples);

struct EncodedSplit {
    std::vector<EncodedSample> train;
    std::vector<EncodedSample> validation;
    std::vector<EncodedSample> test;
    std::size_t n_classes{0};
    std::size_t n_qubits{0};
};

[[nodiscard]] EncodedSplit encode_split(const DatasetSplit &split);

struct TrainConfig {
    std::size_t epochs{5};
    std::size_t batch_size{32};
    double learning_rate{0.1};
    std::uint64_t seed{0};
    GradientMethod gradient{GradientMethod::Adjoint};
    std::size_t workers{1};
};

struct EpochRecord {
    std::size_t epoch{0};
    double train_loss{0.0};
    double train_acc{0.0};
    /// NaN when no validation samples were supplied.
    double val_acc{std::numeric_limits<double>::quiet_NaN()};
    std::size_t n_quantum_params{0};
};

struct TrainResult {
    Model model;
    std::vector<EpochRecord> log;
};

/// Raised when the training loss stops being finite; holds the model as it
/// was at the start of the failing epoch.
class DivergenceError : public NumericalError {
  public:
    DivergenceError(const std::string &what, Model last_good)
        : NumericalError(what), last_good_(std::move(last_good)) {}
    [[nodiscard]] const Model &last_good() const noexcept { return last_good_; }

  private:
    Model last_good_;
};

/// Mini-batch Adam over shuffled training samples. Circuit parameters always
/// train; head weights train only when the head is trainable. Train loss and
/// accuracy are running means over the epoch's forward passes; validation
/// accuracy is measured after each epoch.
[[nodiscard]] TrainResult train(Model model, const std::vector<EncodedSample> &train_set,
                                const std::vector<EncodedSample> &validation_set,
                                const TrainConfig &config);

class ConfusionMatrix {
  public:
    explicit ConfusionMatrix(std::size_t n_classes = 0)
        : n_classes_(n_classes), counts_(n_classes * n_classes, 0) {}

    void add(std::size_t truth, std::size_t predicted) {
        ++counts_.at(truth * n_classes_ + predicted);
    }

    [[nodiscard]] std::size_t n_classes() const noexcept { return n_classes_; }
    /// Rows are ground truth, columns predictions.
    [[nodiscard]] std::size_t at(std::size_t truth, std::size_t predicted) const {
        return counts_.at(truth * n_classes_ + predicted);
    }
    [[nodiscard]] std::size_t row_sum(std::size_t truth) const;
    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] std::size_t trace() const;

    bool operator==(const ConfusionMatrix &) const = default;

  private:
    std::size_t n_classes_;
    std::vector<std::size_t> counts_;
};

struct Evaluation {
    double accuracy{0.0};
    ConfusionMatrix confusion;
    std::vector<std::size_t> predictions;
};

/// Top-1 accuracy and confusion matrix. Throws std::invalid_argument on an
/// empty sample list.
[[nodiscard]] Evaluation evaluate(const Model &model, const std::vector<EncodedSample> &samples,
                                  std::size_t workers = 1);

} // namespace lqas
