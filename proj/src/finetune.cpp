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
#include "lqas/finetune.hpp"

#include "lqas/rng.hpp"

#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace lqas {

namespace {

double accuracy_or_nan(const Model &model, const std::vector<EncodedSample> &samples,
                       std::size_t workers) {
    if (samples.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return evaluate(model, samples, workers).accuracy;
}

} // namespace

std::string_view to_string(FinetuneMode mode) {
    return mode == FinetuneMode::Warm ? "warm" : "scratch";
}

FinetuneMode parse_finetune_mode(std::string_view text) {
    if (text == "warm") {
        return FinetuneMode::Warm;
    }
    if (text == "scratch") {
        return FinetuneMode::Scratch;
    }
    throw std::invalid_argument("unknown fine-tune mode '" + std::string(text) + "'");
}

Model reinitialize(const Model &model, double init_range, std::uint64_t seed) {
    Model fresh = model;
    Rng rng = make_rng(seed, "scratch-init");
    std::uniform_real_distribution<double> dist(-init_range, init_range);
    for (double &p : fresh.tape.mutable_params()) {
        p = dist(rng);
    }
    if (fresh.head.trainable) {
        fresh.head = make_learnable_head(model.head.n_classes, model.head.n_features,
                                         derive_seed(seed, "scratch-head"));
    }
    return fresh;
}

FinetuneResult finetune_or_scratch(Model model, const EncodedSplit &split,
                                   const FinetuneConfig &finetune, const SearchConfig &config) {
    FinetuneResult result;
    if (finetune.mode == FinetuneMode::Scratch) {
        model = reinitialize(model, finetune.init_range, config.seed);
        TrainResult tr = train(std::move(model), split.train, split.validation,
                               config.train_config(finetune.scratch_epochs, config.lr_search,
                                                   derive_seed(config.seed, "scratch-train")));
        model = std::move(tr.model);
        result.log = std::move(tr.log);
    }
    TrainResult tr = train(std::move(model), split.train, split.validation,
                           config.train_config(finetune.finetune_epochs, config.lr_finetune,
                                               derive_seed(config.seed, "finetune")));
    const std::size_t offset = result.log.size();
    for (EpochRecord rec : tr.log) {
        rec.epoch += offset;
        result.log.push_back(rec);
    }
    result.model = std::move(tr.model);
    result.train_acc = accuracy_or_nan(result.model, split.train, config.workers);
    result.val_acc = accuracy_or_nan(result.model, split.validation, config.workers);
    result.test_acc = accuracy_or_nan(result.model, split.test, config.workers);
    return result;
}

} // namespace lqas
